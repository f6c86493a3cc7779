"""One-shot computation of every curvature object and structural check."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import CoeffExpr
from .connection import Connection, koszul_connection
from .curvature import (RiemannTensor, ricci, ricci_operators, riemann, scalar_curvature,
                        star_ricci_definitional, star_ricci_kenmotsu, star_scalar)
from .manifold import FramedManifold
from .tensors import Endomorphism, Tensor02
from .verify import (CheckResult, identity_suite, lemma_nabla_qstar, star_ricci_agreement,
                     verify_almost_contact, verify_jacobi, verify_kenmotsu, verify_levi_civita,
                     verify_riemann_symmetries)

__all__ = ["Geometry", "analyze"]


@dataclass(frozen=True)
class Geometry:
    manifold: FramedManifold
    connection: Connection
    riemann: RiemannTensor
    ricci: Tensor02
    scalar: CoeffExpr
    star_ricci: Tensor02
    star_scalar: CoeffExpr
    ricci_operator: Endomorphism
    star_ricci_operator: Endomorphism
    checks: dict[str, list[CheckResult]] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.manifold.n

    @property
    def almost_contact(self) -> bool:
        return all(c.passed for c in self.checks["almost_contact"])

    @property
    def kenmotsu(self) -> bool:
        return self.almost_contact and all(c.passed for c in self.checks["kenmotsu"])

    def all_checks(self) -> list[CheckResult]:
        return [c for group in self.checks.values() for c in group]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.all_checks())


def analyze(m: FramedManifold) -> Geometry:
    """Connection, curvature, *-Ricci data and the full check suite.

    Kenmotsu-only identities are evaluated only once the almost contact and
    Kenmotsu conditions hold.
    """
    conn = koszul_connection(m)
    r = riemann(m, conn)
    s = ricci(m, r)
    scalar = scalar_curvature(m, s)
    s_star = star_ricci_definitional(m, r)
    r_star = star_scalar(m, s_star)
    q, q_star = ricci_operators(m, s, s_star)

    checks: dict[str, list[CheckResult]] = {
        "frame": [verify_jacobi(m)],
        "connection": verify_levi_civita(m, conn),
        "curvature": verify_riemann_symmetries(m, r),
        "almost_contact": verify_almost_contact(m),
    }
    checks["kenmotsu"] = verify_kenmotsu(m, conn)
    if all(c.passed for c in checks["almost_contact"] + checks["kenmotsu"]):
        checks["kenmotsu_identities"] = identity_suite(m, conn, r, s)
        checks["star_ricci"] = star_ricci_agreement(m, s_star, star_ricci_kenmotsu(m, s),
                                                    scalar, r_star)
        checks["nabla_qstar"] = lemma_nabla_qstar(m, conn, q_star)
    return Geometry(m, conn, r, s, scalar, s_star, r_star, q, q_star, checks)
