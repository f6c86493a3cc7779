"""*-k-Ricci-Yamabe soliton analysis.

The soliton equation is

    k L_V g + 2 alpha S* + (2 Lambda - beta r*) g = 0

(or the same with S, r when ``star`` is off).  Parameters are coefficient
expressions, so ``alpha``, ``beta``, ``k`` and ``Lambda`` may be symbolic;
"constant" always means independent of the manifold coordinates.

Besides the residual of the full tensor equation, this module fits Lambda
from contractions of it, classifies potential fields (torse-forming,
conformal Killing), and evaluates the closed-form Lambda values that hold on
Kenmotsu manifolds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ONE, ZERO, CoeffExpr, NotAUnit, NotDivisible, as_expr
from .connection import Connection, covariant_derivative_vector
from .geometry import Geometry
from .manifold import FramedManifold
from .tensors import FrameVectorField, Tensor02

__all__ = [
    "ConformalData",
    "EtaEinsteinData",
    "GradientData",
    "GradientReport",
    "LaplacianResult",
    "NonConstantK",
    "NonConstantScalarCurvature",
    "NotNowhereVanishing",
    "SolitonError",
    "SolitonParams",
    "SolitonReport",
    "TorseForming",
    "UnknownLambda",
    "VectorFieldClassification",
    "classify_lambda",
    "conformal_killing_classify",
    "divergence",
    "eta_einstein_analyze",
    "gradient_residual",
    "laplacian_identity",
    "lambda_eta_einstein",
    "lambda_torse",
    "lie_derivative_metric",
    "lie_derivative_metric_brackets",
    "soliton_residual",
    "theorem_omega",
    "torse_forming_classify",
    "torse_specializations",
    "xi_trace_lambda",
    "xi_trace_lambda_value",
    "classify_vector",
    "concurrent_lambda_unit_k",
    "gradient_data",
    "sign_regions",
]

MODES = ("exact", "trace", "xi-trace")


class SolitonError(ValueError):
    pass


class NonConstantK(SolitonError):
    pass


class UnknownLambda(SolitonError):
    pass


class NonConstantScalarCurvature(SolitonError):
    pass


class NotNowhereVanishing(SolitonError):
    pass


def classify_lambda(lam: CoeffExpr | None) -> str:
    """expanding / steady / shrinking for Lambda > 0, = 0, < 0."""
    if lam is None:
        return "indeterminate"
    q = lam.as_rational()
    if q is None:
        return "indeterminate"
    if q > 0:
        return "expanding"
    return "steady" if q == 0 else "shrinking"


@dataclass(frozen=True)
class SolitonParams:
    alpha: CoeffExpr
    beta: CoeffExpr
    k: CoeffExpr
    lam: CoeffExpr | None = None
    star: bool = True

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "k"):
            object.__setattr__(self, name, as_expr(getattr(self, name)))
        if self.lam is not None:
            object.__setattr__(self, "lam", as_expr(self.lam))
        if self.k.is_zero():
            raise SolitonError("k must be nonzero")

    def with_lambda(self, lam) -> SolitonParams:
        return SolitonParams(self.alpha, self.beta, self.k, lam, self.star)

    @property
    def special_case(self) -> str:
        prefix = "*-k-" if self.star else "k-"
        key = (self.alpha.as_rational(), self.beta.as_rational())
        label = {(1, 0): "Ricci", (0, 2): "Yamabe", (1, 1): "Einstein"}.get(key)
        return prefix + label if label else "general"


def _require_constant_k(m: FramedManifold, k: CoeffExpr) -> None:
    if k.depends_on(m.coords):
        raise NonConstantK(f"k = {k} depends on the coordinates")


# -- Lie derivative, divergence -----------------------------------------------

def lie_derivative_metric(m: FramedManifold, conn: Connection, v: FrameVectorField) -> Tensor02:
    """(L_V g)(X, Y) = g(nabla_X V, Y) + g(X, nabla_Y V)."""
    basis = m.basis()
    nv = [covariant_derivative_vector(m, conn, e, v) for e in basis]
    g = m.metric_pairing
    return Tensor02.build(m.dim, lambda i, j: g(nv[i], basis[j]) + g(basis[i], nv[j]))


def lie_derivative_metric_brackets(m: FramedManifold, v: FrameVectorField) -> Tensor02:
    """(L_V g)(X, Y) = V g(X, Y) - g([V, X], Y) - g(X, [V, Y]) on the frame."""
    basis = m.basis()
    br = [m.lie_bracket(v, e) for e in basis]
    g = m.metric_pairing
    return Tensor02.build(m.dim, lambda i, j: m.derivative(v, m.metric[i][j])
                          - g(br[i], basis[j]) - g(basis[i], br[j]))


def divergence(m: FramedManifold, conn: Connection, v: FrameVectorField) -> CoeffExpr:
    total = ZERO
    for i, e in enumerate(m.basis()):
        total = total + covariant_derivative_vector(m, conn, e, v)[i]
    return total


# -- soliton residual ---------------------------------------------------------------

@dataclass
class SolitonReport:
    mode: str
    params: SolitonParams
    residual: Tensor02
    trace_residual: CoeffExpr
    fitted_lambda: CoeffExpr | None
    classification: str
    special_case: str
    witness: tuple[int, int, CoeffExpr] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def lambda_used(self) -> CoeffExpr | None:
        return self.fitted_lambda if self.fitted_lambda is not None else self.params.lam

    @property
    def residual_zero(self) -> bool:
        return self.residual.is_zero()

    @property
    def satisfied(self) -> bool:
        """Exact mode: the tensor equation holds.  Fitting modes: Lambda was fitted."""
        if self.mode == "exact":
            return self.residual_zero
        return self.fitted_lambda is not None


def _residual_tensor(geo: Geometry, lvg: Tensor02, params: SolitonParams, lam: CoeffExpr) -> Tensor02:
    m = geo.manifold
    s = geo.star_ricci if params.star else geo.ricci
    r = geo.star_scalar if params.star else geo.scalar
    return (lvg.scale(params.k) + s.scale(params.alpha * 2)
            + m.metric_tensor.scale(lam * 2 - params.beta * r))


def soliton_residual(geo: Geometry, v: FrameVectorField, params: SolitonParams,
                     mode: str = "exact") -> SolitonReport:
    """Evaluate the soliton equation for potential ``v``.

    ``exact`` needs a known Lambda and reports the full residual tensor.
    ``trace`` solves trace(residual) = 0 for Lambda; ``xi-trace`` solves the
    (xi, xi) component.  The fitted Lambda is then substituted back, so the
    residual shows what the contraction does not control.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    m = geo.manifold
    lvg = lie_derivative_metric(m, geo.connection, v)
    s = geo.star_ricci if params.star else geo.ricci
    r = geo.star_scalar if params.star else geo.scalar
    notes: list[str] = []
    fitted = None

    if mode == "exact":
        if params.lam is None:
            raise UnknownLambda("exact mode needs a value for Lambda")
        lam = params.lam
    else:
        _require_constant_k(m, params.k)
        if mode == "trace":
            dim = m.dim
            candidate = ((params.beta * r * dim - params.alpha * r * 2
                          - params.k * m.metric_trace(lvg)) / (2 * dim))
        else:
            xi = m.xi_field
            gxx = m.metric_pairing(xi, xi).as_rational()
            candidate = ((params.beta * r * gxx - params.k * lvg(xi, xi)
                          - params.alpha * s(xi, xi) * 2) / (2 * gxx))
        if candidate.depends_on(m.coords):
            notes.append(f"contracted equation is not solved by a constant Lambda: {candidate}")
            lam = params.lam if params.lam is not None else ZERO
        else:
            fitted = lam = candidate
            if params.lam is not None and params.lam != candidate:
                notes.append(f"supplied Lambda {params.lam} differs from fitted {candidate}")

    residual = _residual_tensor(geo, lvg, params, lam)
    if mode == "xi-trace":
        xi = m.xi_field
        trace_residual = residual(xi, xi)
    else:
        trace_residual = m.metric_trace(residual)
    witness = residual.first_nonzero()
    if mode != "exact" and witness is not None:
        notes.append("the fitted Lambda solves the contracted equation only; "
                     "the full tensor residual is nonzero")
    return SolitonReport(mode, params, residual, trace_residual, fitted,
                         classify_lambda(lam if mode == "exact" else fitted),
                         params.special_case, witness, notes)


# -- closed-form Lambda values ------------------------------------------------

def _shift(r: CoeffExpr, n: int) -> CoeffExpr:
    return as_expr(r) + 4 * n * n


def xi_trace_lambda_value(r, n: int, beta) -> CoeffExpr:
    """Lambda = beta (r + 4n^2) / 2 for the soliton with potential xi."""
    return as_expr(beta) * _shift(r, n) / 2


def xi_trace_lambda(geo: Geometry, beta) -> tuple[CoeffExpr, str]:
    if geo.scalar.depends_on(geo.manifold.coords):
        raise NonConstantScalarCurvature(f"r = {geo.scalar} is not constant")
    lam = xi_trace_lambda_value(geo.scalar, geo.n, beta)
    return lam, classify_lambda(lam)


@dataclass(frozen=True)
class LaplacianResult:
    value: CoeffExpr
    special_cases: dict[str, CoeffExpr]


def laplacian_identity(r, n: int, params: SolitonParams, coords=()) -> LaplacianResult:
    """Laplacian of the potential function forced by the traced soliton equation:

        Delta f = -(r + 4n^2)/k [alpha - beta (2n + 1)/2] - Lambda (2n + 1)/k
    """
    if params.lam is None:
        raise UnknownLambda("the Laplacian identity needs Lambda")
    k = params.k
    if k.depends_on(coords):
        raise NonConstantK(f"k = {k} depends on the coordinates")
    shifted = _shift(r, n)
    dim = 2 * n + 1
    numerator = -shifted * (params.alpha - params.beta * Fraction(dim, 2)) - params.lam * dim
    value = _divide(numerator, k)
    cases: dict[str, CoeffExpr] = {}
    key = (params.alpha.as_rational(), params.beta.as_rational())
    if key == (1, 0):
        cases["ricci"] = _divide(-shifted, k) - _divide(params.lam * dim, k)
    elif key == (0, 2):
        cases["yamabe"] = _divide((shifted - params.lam) * dim, k)
    elif key == (1, 1):
        cases["einstein"] = (_divide(-shifted * (1 - Fraction(dim, 2)), k)
                             - _divide(params.lam * dim, k))
    return LaplacianResult(value, cases)


def _divide(a: CoeffExpr, k: CoeffExpr) -> CoeffExpr:
    try:
        return a.exact_quotient(k)
    except NotDivisible:
        raise NonConstantK(f"cannot divide {a} by k = {k} inside the coefficient algebra") from None


def theorem_omega(r, n: int, params: SolitonParams) -> CoeffExpr:
    """Conformal factor forced on a conformal Killing potential:
    Omega = [beta (r + 4n^2)/2 - Lambda] / k."""
    if params.lam is None:
        raise UnknownLambda("Omega needs Lambda")
    return _divide(xi_trace_lambda_value(r, n, params.beta) - params.lam, params.k)


def lambda_eta_einstein(a, b, n: int, r, params: SolitonParams) -> CoeffExpr:
    """Lambda = -a alpha - 2n alpha + beta (r + 4n^2)/2 - b alpha."""
    alpha = params.alpha
    return (-as_expr(a) * alpha - alpha * (2 * n) + xi_trace_lambda_value(r, n, params.beta)
            - as_expr(b) * alpha)


def lambda_torse(n: int, r, params: SolitonParams, psi, omega_tau) -> CoeffExpr:
    """Lambda for a torse-forming potential with data (psi, omega(tau))."""
    alpha, k = params.alpha, params.k
    r = as_expr(r)
    return (xi_trace_lambda_value(r, n, params.beta) - k * as_expr(psi) - alpha * (2 * n - 1)
            - (alpha * r + alpha + k * as_expr(omega_tau)) / (2 * n + 1))


def torse_specializations(n: int, r, params: SolitonParams, psi, omega_tau) -> dict[str, CoeffExpr]:
    """The five subtype specializations, obtained by substitution."""
    return {
        "concircular": lambda_torse(n, r, params, psi, 0),
        "concurrent": lambda_torse(n, r, params, 1, 0),
        "recurrent": lambda_torse(n, r, params, 0, omega_tau),
        "parallel": lambda_torse(n, r, params, 0, 0),
        "torqued": lambda_torse(n, r, params, psi, 0),
    }


def concurrent_lambda_unit_k(n: int, r, params: SolitonParams) -> CoeffExpr:
    """The concurrent value with -1 in place of -k, i.e. its k = 1 specialization."""
    alpha = params.alpha
    r = as_expr(r)
    return (xi_trace_lambda_value(r, n, params.beta) - 1 - alpha * (2 * n - 1)
            - (alpha * r + alpha) / (2 * n + 1))


# -- eta-Einstein ----------------------------------------------------------------

@dataclass(frozen=True)
class EtaEinsteinData:
    a: CoeffExpr
    b: CoeffExpr

    def trace(self, n: int) -> CoeffExpr:
        return self.a * (2 * n + 1) + self.b


def eta_einstein_analyze(m: FramedManifold, s: Tensor02) -> EtaEinsteinData | None:
    """Solve S = a g + b eta (x) eta, or return None."""
    xi = m.xi_field
    eta = m.eta_apply
    g = m.metric_pairing
    x = None
    for e in m.basis():
        cand = e - xi.scale(eta(e))
        if not cand.is_zero():
            x = cand
            break
    if x is None:
        return None
    gxx = g(x, x).as_rational()
    a = s(x, x) / gxx
    # eta(xi) = g(xi, xi) = 1, so S(xi, xi) = a + b
    b = s(xi, xi) - a * g(xi, xi)
    model = m.metric_tensor.scale(a) + m.eta_eta.scale(b)
    return EtaEinsteinData(a, b) if model == s else None


# -- vector field classification ------------------------------------------------

@dataclass(frozen=True)
class TorseForming:
    psi: CoeffExpr
    omega: FrameVectorField  # omega(e_i)

    def omega_of(self, v: FrameVectorField) -> CoeffExpr:
        return sum((a * b for a, b in zip(self.omega, v)), ZERO)


@dataclass(frozen=True)
class ConformalData:
    omega: CoeffExpr
    kind: str


@dataclass
class VectorFieldClassification:
    torse_forming: TorseForming | None = None
    subtype: str = "not-torse-forming"
    conformal: ConformalData | None = None
    notes: list[str] = field(default_factory=list)


def conformal_kind(omega: CoeffExpr, coords) -> str:
    if omega.is_zero():
        return "killing"
    if omega.depends_on(coords):
        return "proper"
    return "proper-homothetic"


def conformal_killing_classify(m: FramedManifold, conn: Connection,
                               v: FrameVectorField) -> ConformalData | None:
    """Detect L_V g = 2 Omega g; None when V is not conformal Killing."""
    lvg = lie_derivative_metric(m, conn, v)
    g00 = m.metric[0][0]
    omega = lvg[0, 0] / (2 * g00)
    if lvg != m.metric_tensor.scale(omega * 2):
        return None
    return ConformalData(omega, conformal_kind(omega, m.coords))


def torse_forming_classify(m: FramedManifold, conn: Connection,
                           tau: FrameVectorField) -> VectorFieldClassification:
    """Solve nabla_X tau = psi X + omega(X) tau over the frame."""
    if not any(c.is_unit() for c in tau):
        raise NotNowhereVanishing(f"no component of {tau} is a unit; cannot certify tau != 0")
    n = m.dim
    basis = m.basis()
    deriv = [covariant_derivative_vector(m, conn, e, tau) for e in basis]
    out = VectorFieldClassification()

    # divisors in order of preference: units first, then other nonzero components
    order = sorted((k for k in range(n) if not tau[k].is_zero()),
                   key=lambda k: (not tau[k].is_unit(), k))

    def solve_omega(i: int, psi: CoeffExpr, skip: int | None = None) -> CoeffExpr | None:
        for k in order:
            if k == skip:
                continue
            try:
                return (deriv[i][k] - (psi if i == k else ZERO)).exact_quotient(tau[k])
            except (NotDivisible, NotAUnit):
                continue
        return None

    psi = None
    vanishing = [i for i in range(n) if tau[i].is_zero()]
    if vanishing:
        i = vanishing[0]
        psi = deriv[i][i]
    else:
        for i in range(n):
            others = [k for k in order if k != i]
            if not others:
                continue
            om = solve_omega(i, ZERO, skip=i)
            if om is not None:
                psi = deriv[i][i] - om * tau[i]
                break
    if psi is None:
        out.notes.append("no (psi, omega) solution inside the coefficient algebra")
        return out

    omegas = []
    for i in range(n):
        om = solve_omega(i, psi)
        if om is None:
            out.notes.append(f"omega({m.frame_names[i]}) has no solution in the algebra")
            return out
        omegas.append(om)
    omega = FrameVectorField(omegas)
    for i, e in enumerate(basis):
        if deriv[i] != e.scale(psi) + tau.scale(omegas[i]):
            out.notes.append(f"nabla_{m.frame_names[i]} tau is not of the form psi X + omega(X) tau")
            return out

    data = TorseForming(psi, omega)
    out.torse_forming = data
    if omega.is_zero():
        out.subtype = "parallel" if psi.is_zero() else ("concurrent" if psi == ONE else "concircular")
    elif psi.is_zero():
        out.subtype = "recurrent"
    elif data.omega_of(tau).is_zero():
        out.subtype = "torqued"
    else:
        out.subtype = "generic"
    return out


def classify_vector(geo: Geometry, v: FrameVectorField) -> VectorFieldClassification:
    m, conn = geo.manifold, geo.connection
    try:
        out = torse_forming_classify(m, conn, v)
    except NotNowhereVanishing as err:
        out = VectorFieldClassification(notes=[str(err)])
    out.conformal = conformal_killing_classify(m, conn, v)
    return out


# -- gradient solitons -------------------------------------------------------------

@dataclass(frozen=True)
class GradientData:
    f: CoeffExpr
    gradient: FrameVectorField
    hessian: Tensor02


def gradient_data(m: FramedManifold, conn: Connection, f) -> GradientData:
    f = as_expr(f)
    df = m.gradient(f)
    basis = m.basis()
    g = m.metric_pairing
    nd = [covariant_derivative_vector(m, conn, e, df) for e in basis]
    hess = Tensor02.build(m.dim, lambda i, j: g(nd[i], basis[j]))
    return GradientData(f, df, hess)


@dataclass
class GradientReport(SolitonReport):
    gradient: GradientData | None = None
    laplacian: CoeffExpr | None = None
    predicted_laplacian: CoeffExpr | None = None


def gradient_residual(geo: Geometry, f, params: SolitonParams) -> GradientReport:
    """k Hess f + alpha S* + (Lambda - beta r*/2) g, with S, r when star is off."""
    if params.lam is None:
        raise UnknownLambda("the gradient residual needs Lambda")
    m = geo.manifold
    data = gradient_data(m, geo.connection, f)
    s = geo.star_ricci if params.star else geo.ricci
    r = geo.star_scalar if params.star else geo.scalar
    residual = (data.hessian.scale(params.k) + s.scale(params.alpha)
                + m.metric_tensor.scale(params.lam - params.beta * r / 2))
    notes = []
    if not data.hessian.is_symmetric():
        notes.append("Hessian is not symmetric")
    lap = m.metric_trace(data.hessian)
    predicted = None
    if params.star and not params.k.depends_on(m.coords) and geo.kenmotsu:
        try:
            predicted = laplacian_identity(geo.scalar, geo.n, params, m.coords).value
        except SolitonError as err:
            notes.append(str(err))
        if predicted is not None and predicted != lap:
            notes.append(f"Laplacian {lap} differs from the traced prediction {predicted}")
    return GradientReport("exact", params, residual, m.metric_trace(residual), None,
                          classify_lambda(params.lam), params.special_case,
                          residual.first_nonzero(), notes,
                          gradient=data, laplacian=lap, predicted_laplacian=predicted)


def sign_regions(lam: CoeffExpr, var: str) -> dict[str, object] | None:
    """Classification of a Lambda that is affine in one parameter.

    Returns the root of Lambda in ``var`` and the label on each side of it, or
    None when Lambda is not of the form c0 + c1*var with rational c0, c1 != 0.
    """
    c1 = lam.diff(var)
    q1 = c1.as_rational()
    if not q1:
        return None
    c0 = lam - c1 * CoeffExpr.parse(var)
    q0 = c0.as_rational()
    if q0 is None:
        return None
    root = -q0 / q1
    return {
        "root": root,
        "above": classify_lambda(as_expr(q1)),
        "at": "steady",
        "below": classify_lambda(as_expr(-q1)),
    }
