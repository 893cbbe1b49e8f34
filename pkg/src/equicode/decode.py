"""Basic decoding through Pade approximants over the residue module.

Setup: alongside the code's evaluation matrix E we carry an auxiliary
evaluation matrix E0 (rank k0, the denominator search space) and the
checking/interpolation pair C1, I1 of the larger space spanned by all
products a0 * f with a0 in the E0 space and f in the E space.  A Pade
approximant of a received vector r is a pair (a0, a1), a0 != 0, with
a0 * r = a1 pointwise; a0 is then a denominator of r.  When r = c + eps
with few errors, every denominator vanishes on the error support, so its
zero set locates the errors and a small dense solve recovers them.

The denominator condition "a0 * r lands in the product space" is one
K-linear system whose matrix is never formed: it is applied factor by
factor (evaluate a0, multiply pointwise by r, apply the extended check)
and handed to the randomized black-box kernel sampler.  Everything
downstream of the sampler is verified, so a wrong kernel draw costs a
retry, never a wrong answer; decode failures are reported as DecodeFail
after the retry budget, not as silent miscorrections.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass

from . import gauss
from .blackbox import BlackBoxOperator, wiedemann_kernel_sample
from .code import (
    EquivariantCode,
    _first_nonzero_points,
    cyclic_orbit_evaluation,
    interpolate,
    parity_check,
)
from .errors import (
    CheckFailed,
    DecodeFail,
    DegreeWindow,
    DegreeWindowWarning,
    DimMismatch,
    Inconsistent,
    InvariantViolation,
    Mismatch,
    NotADenominatorCandidate,
    NotInImage,
    NotSplit,
    RankDeficient,
)
from .ff import root_of_unity
from .galg import (
    FourierImage,
    GroupAlgebraElement,
    ft_group,
    ft_inverse,
    ga_mul_naive,
    ga_sigma,
)
from .kgmat import (
    KGMatrix,
    expand,
    expanded_rank,
    kg_apply,
    kg_involution,
    kg_transpose,
    split_kernel_and_inverse,
)


@dataclass(frozen=True)
class DecoderData:
    """Code plus the product-space matrices the denominator search needs.

    e0: n x k0 evaluation of the denominator space; c1: n x (n-k1) check
    and i1: k1 x n interpolation of the product space.  deg_d0 is the
    defining degree of the denominator space upstairs (None when the
    construction is synthetic and degrees mean nothing).  radius is the
    guaranteed correction radius; outside geometric constructions it is 0
    and decode results are self-consistent rather than exact.
    """

    code: EquivariantCode
    e0: KGMatrix
    c1: KGMatrix
    i1: KGMatrix
    deg_d0: object
    radius: int


@dataclass(frozen=True)
class PadeApproximant:
    a0: tuple  # k0 coordinates in the denominator-space basis
    a1: tuple  # k1 coordinates in the product-space basis


@dataclass(frozen=True)
class DecodeResult:
    codeword: tuple
    message: tuple
    error: tuple
    denominator: object  # k0 coordinates, or None on the clean fast path
    zeros: tuple  # (place, group index) pairs where the denominator is 0


def basic_radius(code: EquivariantCode):
    """(N - deg E - 1 - g_Y) // 2, or None when the metadata is missing."""
    deg_e = code.meta.get("deg_e")
    g_y = code.meta.get("g_y")
    if deg_e is None or g_y is None:
        return None
    return (code.n * code.group.order - deg_e - 1 - g_y) // 2


def _pointwise(a: GroupAlgebraElement, b: GroupAlgebraElement):
    """Coefficientwise product: the residue-algebra multiplication, which
    is NOT the group-algebra convolution."""
    ctx = a.field
    return GroupAlgebraElement(
        a.group, ctx,
        tuple(ctx.mul(x, y) for x, y in zip(a.coeffs, b.coeffs)))


def denominator_values(dd: DecoderData, x):
    """Values of the candidate denominator at all n places."""
    return kg_apply(dd.e0, list(x))


def denominator_check(dd: DecoderData, r, x) -> bool:
    """True iff a0 = E0.x is a denominator of r: (E0 x) * r passes the
    product-space check C1^t.  Cost: two K[G]-matrix applications plus n
    pointwise products."""
    if len(r) != dd.code.n or len(x) != dd.e0.cols:
        raise DimMismatch("received length %d / candidate length %d"
                          % (len(r), len(x)))
    if all(a.is_zero() for a in x):
        raise NotADenominatorCandidate("the zero function is not allowed")
    v = denominator_values(dd, x)
    u = [_pointwise(vi, ri) for vi, ri in zip(v, r)]
    return all(s.is_zero() for s in kg_apply(kg_transpose(dd.c1), u))


def _denominator_operator(dd: DecoderData, r) -> BlackBoxOperator:
    """The denominator condition as a matrix-free K-linear operator.

    Expanded over K the condition reads  expand(C1^t) . R . expand(E0)
    with R the diagonal of r; the transpose swaps the outer factors
    through the involution (expand(M)^t = expand(iota(M^t)))."""
    G, ctx = dd.code.group, dd.code.field
    o = G.order
    n, k0 = dd.e0.rows, dd.e0.cols
    rows = (n - dd.i1.rows) * o
    c1t = kg_transpose(dd.c1)
    e0_t_inv = kg_involution(kg_transpose(dd.e0))
    c1_inv = kg_involution(dd.c1)

    def blocks(flat, count):
        return [GroupAlgebraElement(G, ctx, tuple(flat[b * o:(b + 1) * o]))
                for b in range(count)]

    def flatten(elems):
        out = []
        for a in elems:
            out.extend(a.coeffs)
        return out

    def apply_fn(xs):
        v = kg_apply(dd.e0, blocks(xs, k0))
        u = [_pointwise(vi, ri) for vi, ri in zip(v, r)]
        return flatten(kg_apply(c1t, u))

    def apply_t_fn(ys):
        w = kg_apply(c1_inv, blocks(ys, n - dd.i1.rows))
        u = [_pointwise(ri, wi) for ri, wi in zip(r, w)]
        return flatten(kg_apply(e0_t_inv, u))

    return BlackBoxOperator(ctx, rows, k0 * o, apply_fn, apply_t_fn)


def find_denominator(dd: DecoderData, r, seed=0, max_attempts=40):
    """Sample a verified denominator of r, or None.

    None means the kernel sampler came up empty within the budget: either
    no denominator exists (too many errors) or the draws were unlucky.
    Any non-None return passes denominator_check.
    """
    if len(r) != dd.code.n:
        raise DimMismatch("received word has length %d, expected %d"
                          % (len(r), dd.code.n))
    op = _denominator_operator(dd, r)
    raw = wiedemann_kernel_sample(op, seed=seed, max_attempts=max_attempts)
    if raw is None:
        return None
    G, ctx, o = dd.code.group, dd.code.field, dd.code.group.order
    x = [GroupAlgebraElement(G, ctx, tuple(raw[b * o:(b + 1) * o]))
         for b in range(dd.e0.cols)]
    if not denominator_check(dd, r, x):
        return None
    return x


def pade_numerator(dd: DecoderData, r, x) -> PadeApproximant:
    """Complete a verified denominator to a Pade approximant (a0, a1).

    a1 = I1 . ((E0 x) * r); membership of the product in the I1/C1 space
    is exactly the condition denominator_check verified (the check matrix
    has full rank n - k1, so its kernel IS the product space)."""
    if not denominator_check(dd, r, x):
        raise CheckFailed("candidate is not a denominator of this word")
    v = denominator_values(dd, x)
    u = [_pointwise(vi, ri) for vi, ri in zip(v, r)]
    a1 = kg_apply(dd.i1, u)
    return PadeApproximant(tuple(x), tuple(a1))


def denominator_zeros(dd: DecoderData, x):
    """(place, group index) pairs where the denominator values vanish."""
    zeros = []
    for i, vi in enumerate(denominator_values(dd, x)):
        z = vi.field.zero
        for s, c in enumerate(vi.coeffs):
            if c == z:
                zeros.append((i, s))
    return zeros


def basic_decode(dd: DecoderData, r, seed=0, max_attempts=40,
                 trace=None) -> DecodeResult:
    """Correct r to a codeword: locate errors at the zeros of a sampled
    denominator, then solve for the error values densely.

    Exact up to dd.radius errors for the geometric constructions; always
    sound (the returned triple is verified: c is a codeword, m encodes to
    c, r = c + error, and the error sits inside the denominator's zeros).
    Raises DecodeFail when the retry budget runs out.  trace, if given, is
    called with one line per pipeline stage.
    """
    log = trace if trace is not None else lambda line: None
    code = dd.code
    G, ctx, o = code.group, code.field, code.group.order
    r = list(r)
    if all(s.is_zero() for s in parity_check(code, r)):
        log("syndrome zero, fast path")
        m = interpolate(code, r)
        zero = GroupAlgebraElement(G, ctx, (ctx.zero,) * o)
        return DecodeResult(tuple(r), tuple(m), (zero,) * code.n, None, ())
    log("syndrome nonzero, searching denominators")
    ct = [list(row) for row in expand(kg_transpose(code.check)).matrix]
    rvec = []
    for a in r:
        rvec.extend(a.coeffs)
    target = gauss.matvec(ctx, ct, rvec)
    rounds = max(1, max_attempts // 4)
    for attempt in range(rounds):
        op = _denominator_operator(dd, r)
        raw = wiedemann_kernel_sample(op, seed=seed * rounds + attempt,
                                      max_attempts=4)
        log("round %d: %d black-box applications" % (attempt, op.calls))
        if raw is None:
            log("round %d: no denominator found" % attempt)
            continue
        x = [GroupAlgebraElement(G, ctx, tuple(raw[b * o:(b + 1) * o]))
             for b in range(dd.e0.cols)]
        if not denominator_check(dd, r, x):
            log("round %d: kernel sample failed the check" % attempt)
            continue
        zeros = denominator_zeros(dd, x)
        log("round %d: denominator vanishes at %d points"
            % (attempt, len(zeros)))
        cols = [i * o + s for i, s in zeros]
        sub = [[row[c] for c in cols] for row in ct]
        try:
            sol = gauss.solve(ctx, sub, target)
        except Inconsistent:
            log("round %d: support system inconsistent" % attempt)
            continue
        evec = [ctx.zero] * (code.n * o)
        for c, value in zip(cols, sol):
            evec[c] = value
        err = [GroupAlgebraElement(G, ctx, tuple(evec[i * o:(i + 1) * o]))
               for i in range(code.n)]
        cw = [GroupAlgebraElement(G, ctx,
                                  tuple(ctx.sub(a, b) for a, b in
                                        zip(ri.coeffs, ei.coeffs)))
              for ri, ei in zip(r, err)]
        if not all(s.is_zero() for s in parity_check(code, cw)):
            log("round %d: corrected word fails the parity check" % attempt)
            continue
        try:
            m = interpolate(code, cw)
        except NotInImage:
            log("round %d: corrected word not in the image" % attempt)
            continue
        log("decoded: %d expanded error positions" % len(cols))
        return DecodeResult(tuple(cw), tuple(m), tuple(err), tuple(x),
                            tuple(zeros))
    raise DecodeFail("no consistent correction within %d rounds" % rounds)


# ------------------------------------------------------- data constructors


def _warn_degree_windows(code: EquivariantCode, deg_d0):
    """Warn-only comfort windows on the base: g <= deg D0 <= n-1 and
    2g - 1 <= deg D + deg D0 <= n - 1."""
    g_x = code.meta.get("g_x")
    deg_d = code.meta.get("deg_d")
    if g_x is None or deg_d is None or deg_d0 is None:
        return
    n = code.n
    if not g_x <= deg_d0 <= n - 1:
        warnings.warn(DegreeWindowWarning(
            "auxiliary degree %d outside [%d, %d]" % (deg_d0, g_x, n - 1)),
            stacklevel=3)
    if not 2 * g_x - 1 <= deg_d + deg_d0 <= n - 1:
        warnings.warn(DegreeWindowWarning(
            "product degree %d outside [%d, %d]"
            % (deg_d + deg_d0, 2 * g_x - 1, n - 1)), stacklevel=3)


def _trivial_kg(group, ctx, kmat, rows, cols):
    entries = tuple(GroupAlgebraElement(group, ctx, (kmat[i][j],))
                    for i in range(rows) for j in range(cols))
    return KGMatrix(group, ctx, rows, cols, entries)


def make_rs_decoder_data(code: EquivariantCode, deg_d0=None) -> DecoderData:
    """Decoder data for a trivial-group Vandermonde code.

    Default deg_d0 is the basic radius, which maximizes
    min(deg_d0, n - deg_e - deg_d0 - 1) -- the exact radius, matching the
    classical bound (n - deg_e - 1) // 2.
    """
    d_basic = basic_radius(code)
    if d_basic is not None and d_basic < 0:
        raise DegreeWindow("basic radius %d is negative; this code "
                           "supports encode/check only" % d_basic)
    if code.group.order != 1:
        raise Mismatch("this constructor handles trivial-group codes only")
    if code.meta.get("g_x") != 0 or code.meta.get("deg_e") is None:
        raise Mismatch("need genus-0 metadata with a known degree")
    ctx, n = code.field, code.n
    deg_e = code.meta["deg_e"]
    if deg_d0 is None:
        deg_d0 = d_basic
    if deg_d0 < 0 or deg_e + deg_d0 + 1 >= n:
        raise DegreeWindow("auxiliary degree %d leaves no checking "
                           "capacity (deg E = %d, n = %d)"
                           % (deg_d0, deg_e, n))
    _warn_degree_windows(code, deg_d0)
    if code.k >= 2:
        pts = [code.evaluation.entry(i, 1).coeffs[0] for i in range(n)]
    else:
        pts = _first_nonzero_points(ctx, n)
    k0, k1 = deg_d0 + 1, deg_e + deg_d0 + 1
    vand = [[ctx.pow_(x, j) for j in range(k1)] for x in pts]
    for i in range(n):
        for j in range(code.k):
            if code.evaluation.entry(i, j).coeffs[0] != vand[i][j]:
                raise Mismatch("evaluation matrix is not the Vandermonde "
                               "matrix of the expected points")
    G = code.group
    e0 = _trivial_kg(G, ctx, [row[:k0] for row in vand], n, k0)
    e1t = gauss.transpose(vand)
    kern = gauss.kernel_basis(ctx, e1t)
    c1 = _trivial_kg(G, ctx, gauss.transpose(kern), n, n - k1)
    i1 = _trivial_kg(G, ctx, gauss.transpose(
        gauss.solve_matrix(ctx, e1t, gauss.identity(ctx, k1))), k1, n)
    assert expanded_rank(e0) == k0
    radius = min(deg_d0, n - deg_e - deg_d0 - 1)
    return DecoderData(code, e0, c1, i1, deg_d0, radius)


def make_cyclic_decoder_data(code: EquivariantCode, k0) -> DecoderData:
    """Decoder data for a cyclic-cover code (exact radius).

    The denominator space is the rank-k0 polynomial module of degree
    < k0*o; the product space has rank k1 = k + k0.  Through the
    underlying Reed-Solomon structure the radius is
    min(k0*o - 1, o*(n - k - k0)).
    """
    G, ctx = code.group, code.field
    o, n, k = G.order, code.n, code.k
    if len(G.factors) != 1:
        raise Mismatch("cyclic-cover decoder needs a cyclic group")
    if not 0 < k0:
        raise DegreeWindow("auxiliary rank must be positive")
    k1 = k + k0
    if k1 >= n:
        raise DegreeWindow("product rank %d leaves no checking capacity "
                           "(n = %d)" % (k1, n))
    zeta = root_of_unity(ctx, o)
    gen = ctx.generator()
    ys = [ctx.pow_(gen, i) for i in range(n)]
    if code.evaluation.entries != cyclic_orbit_evaluation(ctx, G, zeta,
                                                          ys, k):
        raise Mismatch("evaluation matrix is not the cyclic-orbit "
                       "evaluation of the expected points")
    e0 = KGMatrix(G, ctx, n, k0, cyclic_orbit_evaluation(ctx, G, zeta,
                                                         ys, k0))
    e1 = KGMatrix(G, ctx, n, k1, cyclic_orbit_evaluation(ctx, G, zeta,
                                                         ys, k1))
    c1, i1 = split_kernel_and_inverse(e1, zeta)
    assert expanded_rank(e0) == k0 * o
    radius = min(k0 * o - 1, o * (n - k - k0))
    return DecoderData(code, e0, c1, i1, k0 * o - 1, radius)


def make_split_decoder_data(code: EquivariantCode, k0, seed=0) -> DecoderData:
    """Geometry-blind decoder data for a split code, radius 0.

    The denominator space is the submodule spanned by the first k0
    evaluation columns; the product space is the K[G]-span of all
    pointwise products (E0 column) * (translate of an E column), closed
    per character and padded to a common rank k1.  This needs the
    products to miss part of the residue module: true for degree-graded
    evaluations (cyclic-cover codes), hopeless for generic random codes,
    whose products fill everything -- those refuse with DegreeWindow.
    Without degrees there is no radius claim: decodes are self-consistent
    only.
    """
    G, ctx = code.group, code.field
    o, n, k = G.order, code.n, code.k
    if G.order % ctx.p == 0 or (ctx.q - 1) % G.exponent != 0:
        raise NotSplit("split decoder data needs a split group algebra")
    if not 0 < k0 <= k:
        raise DegreeWindow("denominator rank must be in 1..k (columns are "
                           "taken from the evaluation matrix)")
    omega = root_of_unity(ctx, G.exponent)
    rng = random.Random(seed)
    e0 = KGMatrix(G, ctx, n, k0,
                  tuple(code.evaluation.entry(i, j)
                        for i in range(n) for j in range(k0)))
    if expanded_rank(e0) != k0 * o:
        raise RankDeficient("leading evaluation columns are not free")
    sigmas = [ga_sigma(G, ctx, t) for t in range(o)]
    products = []
    for a in range(k0):
        cols0 = [e0.entry(i, a) for i in range(n)]
        for b in range(k):
            cols = [code.evaluation.entry(i, b) for i in range(n)]
            for s in sigmas:
                products.append([_pointwise(u, ga_mul_naive(s, w))
                                 for u, w in zip(cols0, cols)])
    prod_hat = [[ft_group(q, omega).values for q in qs] for qs in products]
    spans = []
    for chi in range(o):
        rows = [[prod_hat[t][i][chi] for i in range(n)]
                for t in range(len(products))]
        red, pivots = gauss.rref(ctx, rows)
        spans.append([list(red[r]) for r in range(len(pivots))])
    k1 = max(len(s) for s in spans)
    if k1 >= n:
        raise DegreeWindow("product space fills the residue module "
                           "(rank %d of %d); no checking capacity"
                           % (k1, n))
    for span in spans:
        while len(span) < k1:
            cand = [ctx.rand(rng) for _ in range(n)]
            if gauss.rank(ctx, span + [cand]) == len(span) + 1:
                span.append(cand)
    entries = tuple(
        ft_inverse(FourierImage(G, ctx, omega,
                                tuple(spans[chi][j][i] for chi in range(o))))
        for i in range(n) for j in range(k1))
    e1 = KGMatrix(G, ctx, n, k1, entries)
    c1, i1 = split_kernel_and_inverse(e1, omega)
    c1t = kg_transpose(c1)
    for qs in products:
        if not all(s.is_zero() for s in kg_apply(c1t, qs)):
            raise InvariantViolation("product-space closure failed")
    return DecoderData(code, e0, c1, i1, None, 0)
