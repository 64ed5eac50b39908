import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixdiv import (
    IthMixedSpec,
    PairTriple,
    adjoint,
    f_dissimilarity,
    f_divergence,
    integrate,
    ith_bhattacharyya,
    ith_mixed,
    ith_mixed_reference,
    ith_renyi,
    make_generator,
    make_space,
    make_vector,
    matusita_affinity,
    mixed_bhattacharyya,
    mixed_divergence,
    mixed_divergence_k,
    mixed_hellinger,
    mixed_kl,
    mixed_renyi,
    mixed_total_variation,
    paired,
    toussaint_affinity,
    validate_density,
)
from mixdiv.divergence import weighted_product_integral
from mixdiv.errors import (
    ArityMismatch,
    IndexOutOfRange,
    MixedArityZero,
    ReferenceNotProbability,
    RenyiAlphaOne,
    SpaceMismatch,
)

import oracles

# Frozen values regenerated with the direct-summation oracle (tests/oracles.py).
TV_VALUE = 0.5
KL_VALUE = 0.34657359027997264
BHATT_VALUE = 0.9659258262890683
MIXED_SQRT_VALUE = 0.9129266728982846
RENYI_HALF_VALUE = 0.06933646419507386
SQRT_PAIR2_VALUE = 0.9486832980505138
ITH_REF_VALUE = 0.9749466075207308

REL = 1e-12


def _rel_eq(a, b, rel=REL):
    assert abs(a - b) <= rel * max(1.0, abs(a), abs(b)), (a, b)


def _sqrt_triples(two_atom):
    sq = make_generator("sqrt")
    t1 = PairTriple(sq, two_atom["p1"], two_atom["q1"])
    t2 = PairTriple(sq, two_atom["p2"], two_atom["q2"])
    return t1, t2


def _random_instance(seed, max_pairs=6, max_atoms=32, positive_only=False):
    rng = np.random.default_rng(seed)
    atoms = int(rng.integers(2, max_atoms + 1))
    space = make_space(rng.uniform(0.25, 2.0, atoms))
    n = int(rng.integers(1, max_pairs + 1))

    def dens():
        raw = np.exp(rng.uniform(-2.0, 2.0, atoms))
        return validate_density(space, raw / integrate(space, raw), require_prob=True)

    alphas = (-1.0, -0.5, 0.25, 0.5, 0.75, 2.0, 3.0)

    def gen():
        c = int(rng.integers(4 if not positive_only else 2))
        if not positive_only and c == 0:
            return make_generator("tv"), oracles.tv
        if not positive_only and c == 1:
            return make_generator("kl+"), oracles.klp
        if c in (0, 2):
            a, b = rng.uniform(0.1, 2.0, 2)
            return make_generator("linear", a=a, b=b), oracles.linear(a, b)
        alpha = float(alphas[rng.integers(len(alphas))])
        return make_generator("power", alpha=alpha), oracles.power(alpha)

    triples, fs = [], []
    for _ in range(n):
        g, f = gen()
        triples.append(PairTriple(g, dens(), dens()))
        fs.append(f)
    return space, triples, fs


# --- classical divergence ----------------------------------------------------------

def test_f_divergence_fixture_values(two_atom):
    p1, q1 = two_atom["p1"], two_atom["q1"]
    _rel_eq(f_divergence(make_generator("tv"), p1, q1), TV_VALUE)
    _rel_eq(f_divergence(make_generator("kl+"), p1, q1), KL_VALUE)
    _rel_eq(
        f_divergence(make_generator("sqrt"), two_atom["p2"], two_atom["q2"]),
        SQRT_PAIR2_VALUE,
    )


def test_f_divergence_equal_densities_gives_f_at_one(two_atom):
    p1 = two_atom["p1"]
    for g in (make_generator("tv"), make_generator("power", alpha=2.0)):
        _rel_eq(f_divergence(g, p1, p1), g(1.0))


def test_f_divergence_space_mismatch():
    s1 = make_space([1.0, 1.0])
    s2 = make_space([1.0, 2.0])
    d1 = validate_density(s1, [0.5, 0.5])
    d2 = validate_density(s2, [0.5, 0.25])
    with pytest.raises(SpaceMismatch):
        f_divergence(make_generator("tv"), d1, d2)
    with pytest.raises(SpaceMismatch):
        PairTriple(make_generator("tv"), d1, d2)


# --- mixed divergence ----------------------------------------------------------------

def test_mixed_bhattacharyya_fixture(two_atom):
    t1, _ = _sqrt_triples(two_atom)
    _rel_eq(mixed_divergence([t1, t1]), BHATT_VALUE)


def test_mixed_two_pairs_fixture(two_atom):
    t1, t2 = _sqrt_triples(two_atom)
    _rel_eq(mixed_divergence([t1, t2]), MIXED_SQRT_VALUE)


def test_mixed_diagonal_equals_classical(two_atom):
    t1, _ = _sqrt_triples(two_atom)
    for n in (1, 2, 5):
        _rel_eq(
            mixed_divergence([t1] * n),
            f_divergence(t1.generator, t1.p, t1.q),
        )


def test_mixed_identical_distributions_gives_product_of_f_ones(two_atom):
    p = two_atom["p1"]
    gens = [make_generator("power", alpha=a) for a in (0.25, 2.0, -1.0)]
    triples = [PairTriple(g, p, p) for g in gens]
    _rel_eq(mixed_divergence(triples), 1.0)  # every power has f(1) = 1


def test_mixed_arity_zero():
    with pytest.raises(MixedArityZero):
        mixed_divergence([])


@given(st.integers(0, 10**9))
@settings(max_examples=150, deadline=None)
def test_mixed_matches_direct_oracle(seed):
    space, triples, fs = _random_instance(seed)
    mu = space.weights.tolist()
    ps = [t.p.values.tolist() for t in triples]
    qs = [t.q.values.tolist() for t in triples]
    _rel_eq(mixed_divergence(triples), oracles.direct_mixed(fs, ps, qs, mu))


# --- order change ---------------------------------------------------------------------

def test_order_change_row_fixture(two_atom):
    t1, t2 = _sqrt_triples(two_atom)
    base = mixed_divergence([t1, t2])
    for k in range(3):
        _rel_eq(mixed_divergence_k([t1, t2], k), base)


def test_order_change_k_equals_n_is_definition(two_atom):
    t1, t2 = _sqrt_triples(two_atom)
    assert mixed_divergence_k([t1, t2], 2) == mixed_divergence([t1, t2])


def test_order_change_k_zero_is_adjoint_swap(two_atom):
    t1, t2 = _sqrt_triples(two_atom)
    swapped = [PairTriple(adjoint(t.generator), t.q, t.p) for t in (t1, t2)]
    _rel_eq(mixed_divergence_k([t1, t2], 0), mixed_divergence(swapped))


def test_order_change_index_range(two_atom):
    t1, t2 = _sqrt_triples(two_atom)
    for k in (-1, 3):
        with pytest.raises(IndexOutOfRange):
            mixed_divergence_k([t1, t2], k)


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_order_change_invariance(seed):
    _, triples, _ = _random_instance(seed)
    base = mixed_divergence(triples)
    for k in range(len(triples) + 1):
        _rel_eq(mixed_divergence_k(triples, k), base)


# --- permutation / symmetry / rescaling properties -------------------------------------

@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_permutation_invariance(seed):
    _, triples, _ = _random_instance(seed)
    rng = np.random.default_rng(seed + 1)
    perm = rng.permutation(len(triples))
    _rel_eq(mixed_divergence([triples[j] for j in perm]), mixed_divergence(triples))


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_adjoint_swap_invariance(seed):
    _, triples, _ = _random_instance(seed)
    swapped = [PairTriple(adjoint(t.generator), t.q, t.p) for t in triples]
    _rel_eq(mixed_divergence(swapped), mixed_divergence(triples))


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_symmetry_in_distributions(seed):
    _, triples, _ = _random_instance(seed)
    star = [PairTriple(adjoint(t.generator), t.p, t.q) for t in triples]
    rev = [PairTriple(t.generator, t.q, t.p) for t in triples]
    rev_star = [PairTriple(adjoint(t.generator), t.q, t.p) for t in triples]
    s_pq = mixed_divergence(triples) + mixed_divergence(star)
    s_qp = mixed_divergence(rev) + mixed_divergence(rev_star)
    _rel_eq(s_pq, s_qp)


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_measure_rescaling_invariance(seed):
    space, triples, _ = _random_instance(seed)
    rng = np.random.default_rng(seed + 2)
    c = float(rng.uniform(0.2, 5.0))
    scaled = make_space(space.weights * c)
    rescaled = [
        PairTriple(
            t.generator,
            validate_density(scaled, t.p.values / c, require_prob=True),
            validate_density(scaled, t.q.values / c, require_prob=True),
        )
        for t in triples
    ]
    _rel_eq(mixed_divergence(rescaled), mixed_divergence(triples))


# --- i-th mixed divergence --------------------------------------------------------------

def test_ith_endpoints(two_atom):
    t1, t2 = _sqrt_triples(two_atom)
    _rel_eq(
        ith_mixed(IthMixedSpec(t1, t2, i=0.0, n=2)),
        f_divergence(t2.generator, t2.p, t2.q),
    )
    _rel_eq(
        ith_mixed(IthMixedSpec(t1, t2, i=2.0, n=2)),
        f_divergence(t1.generator, t1.p, t1.q),
    )


def test_ith_middle_coincides_with_mixed(two_atom):
    t1, t2 = _sqrt_triples(two_atom)
    _rel_eq(ith_mixed(IthMixedSpec(t1, t2, i=1.0, n=2)), MIXED_SQRT_VALUE)


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_ith_duality(seed):
    rng = np.random.default_rng(seed)
    _, triples, _ = _random_instance(seed, max_pairs=2, positive_only=True)
    if len(triples) < 2:
        triples = triples * 2
    t1, t2 = triples[0], triples[1]
    n = int(rng.integers(1, 7))
    i = float(rng.uniform(-2.0, n + 2.0))
    lhs = ith_mixed(IthMixedSpec(t1, t2, i=i, n=n))
    rhs = ith_mixed(IthMixedSpec(t2, t1, i=n - i, n=n))
    _rel_eq(lhs, rhs)


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_ith_matches_direct_oracle(seed):
    rng = np.random.default_rng(seed)
    space, triples, fs = _random_instance(seed, max_pairs=2, positive_only=True)
    if len(triples) < 2:
        triples, fs = triples * 2, fs * 2
    n = int(rng.integers(1, 7))
    i = float(rng.uniform(0.0, n))
    got = ith_mixed(IthMixedSpec(triples[0], triples[1], i=i, n=n))
    want = oracles.direct_ith(
        fs[0], triples[0].p.values.tolist(), triples[0].q.values.tolist(),
        fs[1], triples[1].p.values.tolist(), triples[1].q.values.tolist(),
        i, n, space.weights.tolist(),
    )
    _rel_eq(got, want)


def test_ith_spec_validation(two_atom):
    t1, t2 = _sqrt_triples(two_atom)
    with pytest.raises(IndexOutOfRange):
        IthMixedSpec(t1, t2, i=1.0, n=0)
    other = make_space([1.0, 2.0])
    d = validate_density(other, [0.5, 0.25])
    with pytest.raises(SpaceMismatch):
        IthMixedSpec(t1, PairTriple(make_generator("sqrt"), d, d), i=1.0, n=2)


def test_ith_zero_factor_uses_zero_power_zero_convention():
    # with i=0 the first factor is absent even where it vanishes
    space = make_space([1.0, 1.0])
    p = validate_density(space, [0.5, 0.5], require_prob=True)
    q = validate_density(space, [0.25, 0.75], require_prob=True)
    tv_pair = PairTriple(make_generator("tv"), p, p)  # integrand identically 0
    sqrt_pair = PairTriple(make_generator("sqrt"), p, q)
    _rel_eq(
        ith_mixed(IthMixedSpec(tv_pair, sqrt_pair, i=0.0, n=2)),
        f_divergence(make_generator("sqrt"), p, q),
    )
    # positive exponent on a zero integrand kills every atom
    assert ith_mixed(IthMixedSpec(tv_pair, sqrt_pair, i=1.0, n=2)) == 0.0


def test_log_space_handles_extreme_indices():
    # direct power evaluation overflows here; the log-space path must not
    space = make_space([1.0])
    one = validate_density(space, [1.0], require_prob=True)
    tiny = make_generator("linear", a=1e-15, b=0.0)
    pair = PairTriple(tiny, one, one)
    value = ith_mixed(IthMixedSpec(pair, pair, i=-50.0, n=2))
    # w1 = w2 = 1e-15; exponents -25 and 26 multiply back to w = 1e-15
    _rel_eq(value, 1e-15, rel=1e-10)
    with pytest.raises(OverflowError):
        (1e-15) ** (-25.0) * (1e-15) ** 26.0


def test_weighted_product_integral_zero_rules():
    space = make_space([1.0, 1.0])
    w_zero = np.array([0.0, 2.0])
    w_pos = np.array([3.0, 4.0])
    assert weighted_product_integral(space, [w_zero], [0.0]) == 2.0  # 0**0 = 1
    _rel_eq(weighted_product_integral(space, [w_zero, w_pos], [0.5, 0.5]), math.sqrt(8.0))
    assert math.isinf(weighted_product_integral(space, [w_zero], [-1.0]))


# --- reference-measure variant ------------------------------------------------------------

def _reference_fixture():
    space = make_space([0.5, 0.5])
    p1 = validate_density(space, [1.2, 0.8], require_prob=True)
    q1 = validate_density(space, [0.6, 1.4], require_prob=True)
    return space, PairTriple(make_generator("sqrt"), p1, q1)


def test_ith_reference_endpoints():
    _, pair1 = _reference_fixture()
    f2 = make_generator("power", alpha=2.0)
    _rel_eq(ith_mixed_reference(pair1, 0.0, 2, f2), f2(1.0))
    _rel_eq(
        ith_mixed_reference(pair1, 2.0, 2, f2),
        f_divergence(pair1.generator, pair1.p, pair1.q),
    )


def test_ith_reference_worked_value():
    _, pair1 = _reference_fixture()
    value = ith_mixed_reference(pair1, 1.0, 2, make_generator("power", alpha=2.0))
    _rel_eq(value, ITH_REF_VALUE)
    want = oracles.direct_ith_reference(
        oracles.power(0.5), [1.2, 0.8], [0.6, 1.4], 1.0, 2, 1.0, [0.5, 0.5]
    )
    _rel_eq(value, want)


def test_ith_reference_requires_probability_base():
    space = make_space([1.0, 1.0])  # total mass 2
    p = validate_density(space, [0.5, 0.5], require_prob=True)
    pair = PairTriple(make_generator("sqrt"), p, p)
    with pytest.raises(ReferenceNotProbability):
        ith_mixed_reference(pair, 1.0, 2, make_generator("sqrt"))


# --- dissimilarity --------------------------------------------------------------------------

def test_matusita_all_equal_probability(two_atom):
    p = two_atom["p1"]
    for arity in (1, 2, 4):
        vec = make_vector([p] * arity)
        _rel_eq(f_dissimilarity(matusita_affinity(arity), vec), -1.0)


def test_toussaint_all_equal_probability(two_atom):
    p = two_atom["p1"]
    g = toussaint_affinity([0.2, 0.5, 0.3])
    _rel_eq(f_dissimilarity(g, make_vector([p] * 3)), -1.0)


def test_paired_dissimilarity_equals_f_divergence(two_atom):
    p1, q1 = two_atom["p1"], two_atom["q1"]
    tv = make_generator("tv")
    vec = make_vector([p1, q1])
    _rel_eq(f_dissimilarity(paired(tv), vec), TV_VALUE)


def test_dissimilarity_arity_mismatch(two_atom):
    vec = make_vector([two_atom["p1"]])
    with pytest.raises(ArityMismatch):
        f_dissimilarity(matusita_affinity(2), vec)


# --- named wrappers --------------------------------------------------------------------------

def test_wrappers_fixture_values(two_atom):
    pair1 = (two_atom["p1"], two_atom["q1"])
    pair2 = (two_atom["p2"], two_atom["q2"])
    _rel_eq(mixed_bhattacharyya([pair1, pair1]), BHATT_VALUE)
    _rel_eq(mixed_hellinger([pair1, pair2], [0.5, 0.5]), MIXED_SQRT_VALUE)
    _rel_eq(mixed_renyi([pair1, pair1], 0.5), RENYI_HALF_VALUE)
    _rel_eq(mixed_total_variation([pair1, pair1]), TV_VALUE)
    _rel_eq(mixed_kl([pair1, pair1]), KL_VALUE)


def test_renyi_rejects_alpha_one(two_atom):
    pair1 = (two_atom["p1"], two_atom["q1"])
    with pytest.raises(RenyiAlphaOne):
        mixed_renyi([pair1], 1.0)
    with pytest.raises(RenyiAlphaOne):
        ith_renyi(pair1, pair1, 1.0, 1.0, 2)


def test_renyi_vanishes_on_diagonal(two_atom):
    p = two_atom["p1"]
    assert abs(mixed_renyi([(p, p), (p, p)], 0.5)) <= 1e-12


def test_ith_wrappers(two_atom):
    pair1 = (two_atom["p1"], two_atom["q1"])
    pair2 = (two_atom["p2"], two_atom["q2"])
    _rel_eq(ith_bhattacharyya(pair1, pair2, 1.0, 2), MIXED_SQRT_VALUE)
    _rel_eq(
        ith_renyi(pair1, pair1, 0.5, 2.0, 2),
        mixed_renyi([pair1, pair1], 0.5),
    )
