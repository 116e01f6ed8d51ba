from fractions import Fraction

from gl3bethe.field import FLOAT
from gl3bethe.sampling import BOUND, Sampler, sample_scalar_case


def test_same_seed_same_stream():
    a, b = Sampler(42), Sampler(42)
    assert [a.rational() for _ in range(50)] == [b.rational() for _ in range(50)]
    assert Sampler(1).values(5) != Sampler(2).values(5)


def test_rationals_stay_in_range():
    s = Sampler(3)
    for _ in range(2000):
        x = s.rational()
        assert isinstance(x, Fraction) and x != 0
        # reduced form can only shrink the drawn numerator and denominator
        assert abs(x.numerator) <= BOUND and x.denominator <= BOUND


def test_float_backend_shadows_rational_draws():
    r, f = Sampler(9), Sampler(9, FLOAT)
    assert [complex(v) for v in r.values(10)] == f.values(10)


def test_sampled_case_shape_and_determinism():
    c1 = sample_scalar_case(Sampler(5), 2, 1, 3)
    c2 = sample_scalar_case(Sampler(5), 2, 1, 3)
    assert c1.to_json() == c2.to_json()
    assert (len(c1.tau), len(c1.sigma), len(c1.t), len(c1.s), c1.chain.N) == (2, 1, 2, 1, 3)


def test_left_family_can_differ():
    c = sample_scalar_case(Sampler(5), 1, 0, 2, left=(0, 2))
    assert (len(c.tau), len(c.sigma), len(c.t), len(c.s)) == (0, 2, 1, 0)
