from helpers import RIEMANN_TABLE
from kenmotsu.algebra import ZERO
from kenmotsu.curvature import star_ricci_kenmotsu, star_scalar
from kenmotsu.tensors import Endomorphism
from kenmotsu.verify import verify_riemann_symmetries


def expected_riemann(m, i, j, k):
    if (i + 1, j + 1, k + 1) in RIEMANN_TABLE:
        sign, l = RIEMANN_TABLE[(i + 1, j + 1, k + 1)]
        return m.e(l - 1).scale(sign)
    if (j + 1, i + 1, k + 1) in RIEMANN_TABLE:
        sign, l = RIEMANN_TABLE[(j + 1, i + 1, k + 1)]
        return m.e(l - 1).scale(-sign)
    return m.e(0).scale(0)


def test_listed_components(geo):
    m, r = geo.manifold, geo.riemann
    for (i, j, k), (sign, l) in RIEMANN_TABLE.items():
        assert r(m.e(i - 1), m.e(j - 1), m.e(k - 1)) == m.e(l - 1).scale(sign), (i, j, k)


def test_unlisted_components_vanish(geo):
    m, r = geo.manifold, geo.riemann
    for i in range(5):
        for j in range(5):
            for k in range(5):
                assert r(m.e(i), m.e(j), m.e(k)) == expected_riemann(m, i, j, k), (i, j, k)
    assert len(list(r.nonzero())) == 2 * len(RIEMANN_TABLE)


def test_named_components(geo):
    m, r = geo.manifold, geo.riemann
    e = m.e
    assert r(e(0), e(1), e(1)) == -e(0)
    assert r(e(0), e(4), e(0)) == e(4)
    assert r(e(0), e(1), e(2)).is_zero()


def test_riemann_symmetries(geo):
    assert all(c.passed for c in verify_riemann_symmetries(geo.manifold, geo.riemann))


def test_ricci(geo):
    m = geo.manifold
    assert geo.ricci == m.metric_tensor.scale(-4)
    assert geo.ricci[0, 0] == -4
    assert geo.ricci(m.xi_field, m.xi_field) == -4
    assert geo.scalar == -20


def test_star_ricci_definitional(geo):
    m = geo.manifold
    s = geo.star_ricci
    assert s[0, 0] == -1 and s[4, 4] == 0 and s[0, 2] == 0
    assert s == m.metric_tensor.scale(-1) + m.eta_eta


def test_star_ricci_routes_agree(geo):
    m = geo.manifold
    closed = star_ricci_kenmotsu(m, geo.ricci)
    assert closed == geo.star_ricci
    for e in m.basis():
        assert closed(e, m.xi_field) == ZERO


def test_star_scalar(geo):
    assert geo.star_scalar == -4
    assert geo.star_scalar == geo.scalar + 4 * geo.n ** 2
    assert star_scalar(geo.manifold, geo.star_ricci) == -4


def test_ricci_operators(geo):
    m = geo.manifold
    assert geo.ricci_operator(m.e(0)) == m.e(0).scale(-4)
    assert geo.star_ricci_operator(m.e(0)) == -m.e(0)
    assert geo.star_ricci_operator(m.xi_field).is_zero()
    assert geo.star_ricci_operator == Endomorphism.from_columns(
        [-m.e(i) for i in range(4)] + [m.e(4).scale(0)])


def test_abstract_frame_curvature_agrees(geo, abstract_geo):
    assert abstract_geo.ricci == geo.ricci
    assert abstract_geo.star_ricci == geo.star_ricci
    assert abstract_geo.scalar == -20
