import random
import warnings

import pytest

from equicode import gauss
from equicode.code import (
    cyclic_cover_code,
    encode,
    genus2_example_code,
    parity_check,
    rs_degenerate_code,
    synth_split_code,
)
from equicode.decode import (
    DecodeResult,
    _denominator_operator,
    basic_decode,
    basic_radius,
    denominator_check,
    denominator_values,
    denominator_zeros,
    find_denominator,
    make_cyclic_decoder_data,
    make_rs_decoder_data,
    make_split_decoder_data,
    pade_numerator,
)
from equicode.errors import (
    CheckFailed,
    DecodeFail,
    DegreeWindow,
    DegreeWindowWarning,
    DimMismatch,
    Mismatch,
    NotADenominatorCandidate,
)
from equicode.ff import field_make, poly_divmod, poly_trim
from equicode.galg import AbelianGroup, GroupAlgebraElement, ga_rand
from equicode.kgmat import KGMatrix, expand, kg_transpose

K13 = field_make(13)


def rs_pair():
    code = rs_degenerate_code(13, 12, 5)
    return code, make_rs_decoder_data(code)


def cyclic_pair():
    code = cyclic_cover_code(13, 1, 4, 3, 1)
    return code, make_cyclic_decoder_data(code, 1)


def rand_message(code, rng):
    return [ga_rand(code.group, code.field, rng) for _ in range(code.k)]


def corrupt(code, cw, t, rng):
    """Add a random error of expanded weight exactly t; returns (r, pos)."""
    ctx, o = code.field, code.group.order
    pos = rng.sample(range(code.n * o), t)
    rows = [list(a.coeffs) for a in cw]
    for p in pos:
        i, s = divmod(p, o)
        rows[i][s] = ctx.add(rows[i][s], ctx.rand_nonzero(rng))
    return [GroupAlgebraElement(code.group, ctx, tuple(row))
            for row in rows], sorted(pos)


def audit(dd, r, res):
    """The four soundness conditions every decode must satisfy."""
    code = dd.code
    ctx, o = code.field, code.group.order
    assert all(s.is_zero() for s in parity_check(code, list(res.codeword)))
    assert encode(code, list(res.message)) == list(res.codeword)
    for i in range(code.n):
        for s in range(o):
            assert ctx.add(res.codeword[i].coeffs[s],
                           res.error[i].coeffs[s]) == r[i].coeffs[s]
    if res.denominator is None:
        assert all(a.is_zero() for a in res.error)
    else:
        zeros = set(res.zeros)
        for i in range(code.n):
            for s in range(o):
                if res.error[i].coeffs[s] != ctx.zero:
                    assert (i, s) in zeros


def unit_candidate(dd):
    ctx, G, o = dd.code.field, dd.code.group, dd.code.group.order
    one = GroupAlgebraElement(G, ctx, (ctx.one,) + (ctx.zero,) * (o - 1))
    zero = GroupAlgebraElement(G, ctx, (ctx.zero,) * o)
    return [one] + [zero] * (dd.e0.cols - 1)


def berlekamp_welch(pts, rvals, deg_f, e):
    """Classical rational-interpolation decoder; returns the polynomial's
    coefficient list (low degree first) or None."""
    ctx = K13
    n = len(pts)
    for t in range(e, -1, -1):
        width = t + deg_f + t + 1
        rows, rhs = [], []
        for x, r in zip(pts, rvals):
            xp = [ctx.one]
            for _ in range(max(t, deg_f + t)):
                xp.append(ctx.mul(xp[-1], x))
            row = [ctx.mul(xp[j], r) for j in range(t)]
            row += [ctx.neg(xp[j]) for j in range(deg_f + t + 1)]
            rows.append(row)
            rhs.append(ctx.neg(ctx.mul(xp[t], r)))
        try:
            sol = gauss.solve(ctx, rows, rhs)
        except Exception:
            continue
        evec = sol[:t] + [ctx.one]
        nvec = sol[t:]
        q, rem = poly_divmod(nvec, evec, ctx)
        if poly_trim(rem):
            continue
        if len(poly_trim(q)) > deg_f + 1:
            continue
        return list(q) + [ctx.zero] * (deg_f + 1 - len(q))
    return None


def test_rs_decoder_data_parameters():
    code, dd = rs_pair()
    assert basic_radius(code) == 3
    assert dd.deg_d0 == 3 and dd.radius == 3
    assert dd.e0.cols == 4
    assert dd.c1.cols == 3 and dd.i1.rows == 9


def test_denominator_check_accepts_unit_on_clean_word():
    code, dd = rs_pair()
    rng = random.Random(1)
    for _ in range(10):
        r = encode(code, rand_message(code, rng))
        assert denominator_check(dd, r, unit_candidate(dd))


def test_denominator_check_rejects_zero_candidate():
    code, dd = rs_pair()
    r = encode(code, rand_message(code, random.Random(2)))
    zero = GroupAlgebraElement(code.group, code.field, (code.field.zero,))
    with pytest.raises(NotADenominatorCandidate):
        denominator_check(dd, r, [zero] * dd.e0.cols)


def test_denominator_check_rejects_random_candidates_on_bad_word():
    code, dd = rs_pair()
    rng = random.Random(3)
    r, _ = corrupt(code, encode(code, rand_message(code, rng)), 5, rng)
    hits = 0
    for _ in range(50):
        x = [ga_rand(code.group, code.field, rng)
             for _ in range(dd.e0.cols)]
        if any(not a.is_zero() for a in x) and denominator_check(dd, r, x):
            hits += 1
    assert hits == 0


def test_denominator_check_shape_errors():
    code, dd = rs_pair()
    r = encode(code, rand_message(code, random.Random(4)))
    with pytest.raises(DimMismatch):
        denominator_check(dd, r[:-1], unit_candidate(dd))
    with pytest.raises(DimMismatch):
        denominator_check(dd, r, unit_candidate(dd)[:-1])


def test_denominator_operator_matches_dense_expansion():
    code, dd = cyclic_pair()
    ctx, o = code.field, 4
    rng = random.Random(5)
    r, _ = corrupt(code, encode(code, rand_message(code, rng)), 2, rng)
    rvec = [c for a in r for c in a.coeffs]
    c1t = [list(row) for row in expand(kg_transpose(dd.c1)).matrix]
    e0x = [list(row) for row in expand(dd.e0).matrix]
    scaled = [[ctx.mul(rvec[i], v) for v in row] for i, row in enumerate(e0x)]
    dense = gauss.matmul(ctx, c1t, scaled)
    op = _denominator_operator(dd, r)
    assert (op.rows, op.cols) == (len(dense), len(dense[0]))
    for _ in range(10):
        v = [ctx.rand(rng) for _ in range(op.cols)]
        assert op.apply(v) == gauss.matvec(ctx, dense, v)
        w = [ctx.rand(rng) for _ in range(op.rows)]
        assert op.apply_t(w) == gauss.matvec(ctx, gauss.transpose(dense), w)


def test_find_denominator_matches_classical_locator():
    code, dd = rs_pair()
    rng = random.Random(6)
    pts = [K13.from_int(x) for x in range(1, 13)]
    for trial in range(10):
        cw = encode(code, rand_message(code, rng))
        r, pos = corrupt(code, cw, 3, rng)
        x = find_denominator(dd, r, seed=trial)
        assert x is not None
        assert denominator_check(dd, r, x)
        # locator polynomial prod (X - x_i) over the error positions
        loc = [K13.one]
        for p in pos:
            root = pts[p]
            loc = [K13.sub(lo, K13.mul(root, hi))
                   for lo, hi in zip([K13.zero] + loc, loc + [K13.zero])]
        locvals = []
        for xp in pts:
            acc = K13.zero
            for coef in reversed(loc):
                acc = K13.add(K13.mul(acc, xp), coef)
            locvals.append(acc)
        vals = [a.coeffs[0] for a in denominator_values(dd, x)]
        # the vanishing space has K-dimension 1 here, so values must be
        # proportional to the locator's
        pivot = next(i for i, v in enumerate(locvals) if v != K13.zero)
        scale = K13.mul(vals[pivot], K13.inv(locvals[pivot]))
        assert vals == [K13.mul(scale, lv) for lv in locvals]
        assert set(denominator_zeros(dd, x)) == {(p, 0) for p in pos}


def test_pade_numerator_round_trip():
    code, dd = rs_pair()
    rng = random.Random(7)
    pts = [K13.from_int(x) for x in range(1, 13)]
    vand9 = [[K13.pow_(x, j) for j in range(9)] for x in pts]
    for _ in range(10):
        r = encode(code, rand_message(code, rng))
        pade = pade_numerator(dd, r, unit_candidate(dd))
        assert pade.a0 == tuple(unit_candidate(dd))
        a1 = [a.coeffs[0] for a in pade.a1]
        # with a0 = 1 the numerator must re-evaluate to r itself
        vals = gauss.matvec(K13, vand9, a1)
        assert vals == [a.coeffs[0] for a in r]


def test_pade_numerator_zero_word():
    code, dd = rs_pair()
    zero = GroupAlgebraElement(code.group, code.field, (code.field.zero,))
    pade = pade_numerator(dd, [zero] * code.n, unit_candidate(dd))
    assert all(a.is_zero() for a in pade.a1)


def test_pade_numerator_rejects_non_denominator():
    code, dd = rs_pair()
    rng = random.Random(8)
    r, _ = corrupt(code, encode(code, rand_message(code, rng)), 5, rng)
    assert not denominator_check(dd, r, unit_candidate(dd))
    with pytest.raises(CheckFailed):
        pade_numerator(dd, r, unit_candidate(dd))


def test_basic_decode_rs_against_berlekamp_welch():
    code, dd = rs_pair()
    rng = random.Random(9)
    pts = [K13.from_int(x) for x in range(1, 13)]
    for trial in range(200):
        m = rand_message(code, rng)
        cw = encode(code, m)
        t = rng.randrange(0, 4)
        r, _ = corrupt(code, cw, t, rng)
        res = basic_decode(dd, r, seed=trial)
        audit(dd, r, res)
        assert list(res.codeword) == cw
        assert list(res.message) == m
        oracle = berlekamp_welch(pts, [a.coeffs[0] for a in r], 5, 3)
        assert oracle == [a.coeffs[0] for a in m]


def test_basic_decode_fast_path():
    code, dd = rs_pair()
    rng = random.Random(10)
    m = rand_message(code, rng)
    r = encode(code, m)
    res = basic_decode(dd, r, seed=0)
    assert res.denominator is None and res.zeros == ()
    assert list(res.message) == m
    assert all(a.is_zero() for a in res.error)
    audit(dd, r, res)


def test_basic_decode_beyond_radius_stays_sound():
    code, dd = rs_pair()
    rng = random.Random(11)
    fails = 0
    for trial in range(10):
        cw = encode(code, rand_message(code, rng))
        r, _ = corrupt(code, cw, 5, rng)
        try:
            res = basic_decode(dd, r, seed=trial, max_attempts=8)
        except DecodeFail:
            fails += 1
            continue
        audit(dd, r, res)
    assert fails > 0


def test_rs_decoder_data_refusals():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegreeWindowWarning)
        g2 = genus2_example_code()
    with pytest.raises(DegreeWindow):
        make_rs_decoder_data(g2)
    code = rs_degenerate_code(13, 12, 5)
    with pytest.raises(DegreeWindow):
        make_rs_decoder_data(code, deg_d0=6)
    with pytest.raises(DegreeWindow):
        make_rs_decoder_data(code, deg_d0=-1)
    with pytest.raises(Mismatch):
        make_rs_decoder_data(cyclic_cover_code(13, 1, 4, 3, 1), 1)


def test_rs_decoder_data_zero_auxiliary_degree():
    code = rs_degenerate_code(13, 12, 5)
    dd = make_rs_decoder_data(code, deg_d0=0)
    assert dd.radius == 0
    rng = random.Random(12)
    m = rand_message(code, rng)
    res = basic_decode(dd, encode(code, m), seed=0)
    assert list(res.message) == m


def test_rs_decoder_data_rejects_non_vandermonde():
    code = rs_degenerate_code(13, 12, 5)
    entries = list(code.evaluation.entries)
    for j in range(code.k):
        a = entries[j]
        entries[j] = GroupAlgebraElement(
            code.group, K13, (K13.mul(K13.from_int(2), a.coeffs[0]),))
    tweaked = type(code)(code.field, code.group, code.n, code.k,
                         KGMatrix(code.group, K13, code.n, code.k,
                                  tuple(entries)),
                         code.check, code.interp, dict(code.meta))
    with pytest.raises(Mismatch):
        make_rs_decoder_data(tweaked)


def test_cyclic_decoder_data_parameters_and_decoding():
    code, dd = cyclic_pair()
    assert dd.radius == 3 and dd.deg_d0 == 3
    assert dd.i1.rows == 2
    rng = random.Random(13)
    for trial in range(30):
        m = rand_message(code, rng)
        cw = encode(code, m)
        t = rng.randrange(0, 4)
        r, _ = corrupt(code, cw, t, rng)
        res = basic_decode(dd, r, seed=trial)
        audit(dd, r, res)
        assert list(res.codeword) == cw
        assert list(res.message) == m


def test_cyclic_decoder_data_refusals():
    code = cyclic_cover_code(13, 1, 4, 3, 1)
    with pytest.raises(DegreeWindow):
        make_cyclic_decoder_data(code, 2)
    with pytest.raises(DegreeWindow):
        make_cyclic_decoder_data(code, 0)
    synth = synth_split_code(5, 1, AbelianGroup([4]), 4, 2, seed=1)
    with pytest.raises(Mismatch):
        make_cyclic_decoder_data(synth, 1)
    twofactor = synth_split_code(5, 1, AbelianGroup([2, 2]), 4, 2, seed=1)
    with pytest.raises(Mismatch):
        make_cyclic_decoder_data(twofactor, 1)


def test_split_decoder_data_on_cyclic_code():
    code = cyclic_cover_code(13, 1, 4, 3, 1)
    dd = make_split_decoder_data(code, 1)
    assert dd.radius == 0 and dd.deg_d0 is None
    assert dd.i1.rows == 2  # the product span closes at rank k + k0
    rng = random.Random(14)
    for trial in range(20):
        cw = encode(code, rand_message(code, rng))
        t = rng.randrange(0, 4)
        r, _ = corrupt(code, cw, t, rng)
        res = basic_decode(dd, r, seed=trial)
        audit(dd, r, res)
        assert list(res.codeword) == cw  # observed exact on this fixture


def test_split_decoder_data_refuses_generic_codes():
    synth = synth_split_code(5, 1, AbelianGroup([4]), 4, 2, seed=1)
    with pytest.raises(DegreeWindow):
        make_split_decoder_data(synth, 1)
    code = cyclic_cover_code(13, 1, 4, 3, 1)
    with pytest.raises(DegreeWindow):
        make_split_decoder_data(code, 2)


def test_decode_result_is_frozen():
    code, dd = rs_pair()
    res = basic_decode(dd, encode(code, rand_message(code,
                                                     random.Random(15))),
                       seed=0)
    assert isinstance(res, DecodeResult)
    with pytest.raises(AttributeError):
        res.codeword = ()
