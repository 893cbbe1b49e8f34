"""Linear algebra over the group algebra K[G].

A KGMatrix is a dense matrix of GroupAlgebraElements.  The bridge to plain
K-linear algebra is `expand`, which replaces every entry by the circulant
block of multiplication by that entry in the group basis (the regular
representation): block[g, h] = entry_{g h^{-1}}.  With that convention
expand(a) . vec(b) = vec(a b) and expand(involution(a)) = expand(a)^t.

On top of the expansion: invariant duality forms, the lifting of K-linear
forms to K[G]-linear ones, equivariant projections onto free submodules,
systematization by unit pivots, and (in the split case) per-character kernel
and left-inverse computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gauss
from .errors import (
    DimMismatch,
    Inconsistent,
    InvariantViolation,
    Mismatch,
    NotFree,
    NotSplit,
    NotSystematizable,
    RankDeficient,
)
from .galg import (
    AbelianGroup,
    FourierImage,
    GroupAlgebraElement,
    ft_group,
    ft_inverse,
    ga_add,
    ga_involution,
    ga_mul_fast,
    ga_one,
    ga_sub,
    ga_zero,
)
from .ff import FieldCtx


@dataclass(frozen=True)
class KGMatrix:
    group: AbelianGroup
    field: FieldCtx
    rows: int
    cols: int
    entries: tuple  # row-major GroupAlgebraElements

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InvariantViolation("entry count %d, expected %d"
                                     % (len(self.entries),
                                        self.rows * self.cols))
        for a in self.entries:
            if a.group != self.group or a.field != self.field:
                raise Mismatch("entries live in different group algebras")

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]


def kg_from_rows(rows):
    entries = tuple(a for row in rows for a in row)
    if not entries:
        raise InvariantViolation("kg_from_rows needs at least one entry")
    return KGMatrix(entries[0].group, entries[0].field,
                    len(rows), len(rows[0]), entries)


def kg_zero(group, ctx, rows, cols):
    z = ga_zero(group, ctx)
    return KGMatrix(group, ctx, rows, cols, (z,) * (rows * cols))


def kg_identity(group, ctx, n):
    one = ga_one(group, ctx)
    z = ga_zero(group, ctx)
    return KGMatrix(group, ctx, n, n, tuple(one if i == j else z
                                            for i in range(n)
                                            for j in range(n)))


def kg_transpose(m: KGMatrix) -> KGMatrix:
    """Plain entrywise transpose; no involution is applied."""
    return KGMatrix(m.group, m.field, m.cols, m.rows,
                    tuple(m.entry(i, j)
                          for j in range(m.cols) for i in range(m.rows)))


def kg_involution(m: KGMatrix) -> KGMatrix:
    """Entrywise involution, same shape."""
    return KGMatrix(m.group, m.field, m.rows, m.cols,
                    tuple(ga_involution(a) for a in m.entries))


def kg_matmul(a: KGMatrix, b: KGMatrix) -> KGMatrix:
    if a.cols != b.rows:
        raise DimMismatch("inner dimensions %d and %d differ"
                          % (a.cols, b.rows))
    group = a.group
    ctx = a.field
    out = []
    for i in range(a.rows):
        for j in range(b.cols):
            acc = ga_zero(group, ctx)
            for l in range(a.cols):
                acc = ga_add(acc, ga_mul_fast(a.entry(i, l), b.entry(l, j)))
            out.append(acc)
    return KGMatrix(group, ctx, a.rows, b.cols, tuple(out))


def kg_apply(a: KGMatrix, vec):
    """Matrix times vector of GroupAlgebraElements."""
    if a.cols != len(vec):
        raise DimMismatch("matrix has %d columns, vector %d entries"
                          % (a.cols, len(vec)))
    group = a.group
    ctx = a.field
    out = []
    for i in range(a.rows):
        acc = ga_zero(group, ctx)
        for l in range(a.cols):
            acc = ga_add(acc, ga_mul_fast(a.entry(i, l), vec[l]))
        out.append(acc)
    return out


# ------------------------------------------------------------- expansion


@dataclass(frozen=True)
class ExpandedMatrix:
    group: AbelianGroup
    field: FieldCtx
    block_rows: int
    block_cols: int
    matrix: tuple  # tuple of row tuples, raw K-values

    @property
    def rows(self):
        return self.block_rows * self.group.order

    @property
    def cols(self):
        return self.block_cols * self.group.order


def circulant(a: GroupAlgebraElement):
    """The group-order square K-matrix of multiplication by a."""
    G = a.group
    o = G.order
    rows = []
    for g in range(o):
        row = [None] * o
        for h in range(o):
            row[h] = a.coeffs[G.compose(g, G.inverse_index(h))]
        rows.append(tuple(row))
    return rows


def expand(m: KGMatrix) -> ExpandedMatrix:
    G = m.group
    o = G.order
    blocks = [[circulant(m.entry(i, j)) for j in range(m.cols)]
              for i in range(m.rows)]
    out = []
    for i in range(m.rows):
        for g in range(o):
            row = []
            for j in range(m.cols):
                row.extend(blocks[i][j][g])
            out.append(tuple(row))
    return ExpandedMatrix(G, m.field, m.rows, m.cols, tuple(out))


def expanded_rank(m: KGMatrix) -> int:
    return gauss.rank(m.field, [list(r) for r in expand(m).matrix])


def vec_of(a: GroupAlgebraElement):
    return list(a.coeffs)


def unvec(group, ctx, values):
    return GroupAlgebraElement(group, ctx, tuple(values))


def expand_apply(em: ExpandedMatrix, vec):
    """Apply an expanded matrix to a flat K-vector."""
    return gauss.matvec(em.field, [list(r) for r in em.matrix], vec)


# ---------------------------------------------------------------- duality


@dataclass(frozen=True)
class DualityContext:
    """Residue-sum pairing on K[G]^blocks: <w, f> = sum_{i,g} w_i[g] f_i[g]."""

    group: AbelianGroup
    field: FieldCtx
    blocks: int

    def base_form(self, w, f):
        if len(w) != self.blocks or len(f) != self.blocks:
            raise DimMismatch("vectors must have %d blocks" % self.blocks)
        ctx = self.field
        acc = ctx.zero
        for wi, fi in zip(w, f):
            for x, y in zip(wi.coeffs, fi.coeffs):
                acc = ctx.add(acc, ctx.mul(x, y))
        return acc

    def right_act(self, w, sidx):
        """(w . tau)_{i,g} = w_{i, g tau}."""
        G = self.group
        return [GroupAlgebraElement(
            G, self.field,
            tuple(wi.coeffs[G.compose(g, sidx)] for g in range(G.order)))
            for wi in w]

    def left_act(self, sidx, f):
        """(sigma . f)_{i,t} = f_{i, sigma^{-1} t}."""
        G = self.group
        inv = G.inverse_index(sidx)
        return [GroupAlgebraElement(
            G, self.field,
            tuple(fi.coeffs[G.compose(inv, t)] for t in range(G.order)))
            for fi in f]


def duality_form(n, m, dctx: DualityContext) -> GroupAlgebraElement:
    """(n, m) = sum_sigma <m . sigma^{-1}, n> sigma; K[G]-bilinear."""
    G = dctx.group
    ctx = dctx.field
    coeffs = []
    for s in range(G.order):
        shifted = dctx.right_act(m, G.inverse_index(s))
        coeffs.append(dctx.base_form(shifted, n))
    return GroupAlgebraElement(G, ctx, tuple(coeffs))


def phi_G(values, group, ctx) -> KGMatrix:
    """Lift a K-linear form to a K[G]-linear one.

    values[j][t] is the form on the basis vector (block j, group index t);
    the result is the 1 x L matrix w with (w . n) at sigma equal to the form
    at sigma^{-1} n.  Identity coefficient of w . n recovers the K-form.
    """
    L = len(values)
    entries = []
    for j in range(L):
        col = values[j]
        if len(col) != group.order:
            raise DimMismatch("form block %d has %d values, need %d"
                              % (j, len(col), group.order))
        entries.append(GroupAlgebraElement(
            group, ctx,
            tuple(col[group.inverse_index(s)] for s in range(group.order))))
    return KGMatrix(group, ctx, 1, L, tuple(entries))


# -------------------------------------------------------------- projection


def equivariant_projection(v: KGMatrix, support_rows=None) -> KGMatrix:
    """A K[G]-linear projection P (r x L) with P . v = identity.

    v is L x r, columns forming a free-module basis of a submodule of
    K[G]^L; freeness is witnessed by the expansion having K-rank r*order.
    The K-linear lift extends the dual basis by zero outside a set of
    expanded coordinate rows: the echelon pivot rows by default, or the
    caller-chosen `support_rows` (the lift choice).
    """
    G = v.group
    ctx = v.field
    o = G.order
    need = v.cols * o
    x = [list(row) for row in expand(v).matrix]
    if support_rows is None:
        _, pivots = gauss.rref(ctx, gauss.transpose(x))
        support = list(pivots)
    else:
        support = sorted(set(support_rows))
    if len(support) != need:
        raise NotFree("expanded rank %d, need %d" % (len(support), need))
    minor = [x[s] for s in support]
    try:
        y = gauss.inverse(ctx, minor)
    except Inconsistent:
        raise NotFree("chosen support rows give a singular minor")
    entries = []
    for i in range(v.cols):
        # dual form of basis column (i, identity), zero off the support
        psi = [ctx.zero] * (v.rows * o)
        for pos, s in enumerate(support):
            psi[s] = y[i * o][pos]
        for j in range(v.rows):
            entries.append(GroupAlgebraElement(
                G, ctx,
                tuple(psi[j * o + G.inverse_index(s)] for s in range(o))))
    p = KGMatrix(G, ctx, v.cols, v.rows, tuple(entries))
    if kg_matmul(p, v) != kg_identity(G, ctx, v.cols):
        raise InvariantViolation("projection failed to invert the basis")
    return p


# ------------------------------------------------------------ systematize


def ga_unit_inverse(a: GroupAlgebraElement):
    """Inverse of a unit of K[G], or None when a is not invertible."""
    G = a.group
    ctx = a.field
    mat = [list(r) for r in circulant(a)]
    e0 = [ctx.one] + [ctx.zero] * (G.order - 1)
    try:
        x = gauss.solve(ctx, mat, e0)
    except Inconsistent:
        return None
    return GroupAlgebraElement(G, ctx, tuple(x))


@dataclass(frozen=True)
class SystematizeResult:
    matrix: KGMatrix          # row-permuted, column-operated; top block = I_k
    row_permutation: tuple    # position i holds input row row_permutation[i]
    check: KGMatrix           # n x (n-k), check^t . matrix = 0
    interp: KGMatrix          # k x n, interp . matrix = I_k


def systematize(e: KGMatrix) -> SystematizeResult:
    """Unit-pivot systematization; derives check/interpolation matrices.

    Only row permutations and invertible column operations are used, so the
    result evaluates the same submodule.  From the systematic form [I; B]
    the check matrix is [B^t; -I] and the interpolation matrix [I | 0].
    """
    n, k = e.rows, e.cols
    G = e.group
    ctx = e.field
    work = [[e.entry(i, j) for j in range(k)] for i in range(n)]
    perm = list(range(n))
    for step in range(k):
        found = None
        for r in range(step, n):
            for c in range(step, k):
                inv = ga_unit_inverse(work[r][c])
                if inv is not None:
                    found = (r, c, inv)
                    break
            if found:
                break
        if found is None:
            raise NotSystematizable("no unit pivot at step %d" % step)
        r, c, inv = found
        work[step], work[r] = work[r], work[step]
        perm[step], perm[r] = perm[r], perm[step]
        if c != step:
            for row in work:
                row[step], row[c] = row[c], row[step]
        for row in work:
            row[step] = ga_mul_fast(row[step], inv)
        for c2 in range(k):
            if c2 == step:
                continue
            f = work[step][c2]
            if f.is_zero():
                continue
            for row in work:
                row[c2] = ga_sub(row[c2], ga_mul_fast(row[step], f))
    e_sys = kg_from_rows(work)
    one = ga_one(G, ctx)
    z = ga_zero(G, ctx)
    check_rows = []
    for i in range(k):
        check_rows.append([work[k + j][i] for j in range(n - k)])
    for j in range(n - k):
        check_rows.append([(-one if j == l else z) for l in range(n - k)])
    interp_rows = [[one if i == j else z for j in range(n)] for i in range(k)]
    return SystematizeResult(e_sys, tuple(perm),
                             kg_from_rows(check_rows) if n > k
                             else kg_zero(G, ctx, n, 0),
                             kg_from_rows(interp_rows))


# ------------------------------------------------------- split-case solver


def split_kernel_and_inverse(e: KGMatrix, omega):
    """Kernel-checking and left-inverse matrices through the characters.

    In the split case the Fourier transform turns K[G] into K^order
    pointwise, so C and I come from one plain K-linear problem per
    character.  Returns (C, I) with C^t . e = 0 and I . e = identity.
    """
    n, k = e.rows, e.cols
    G = e.group
    ctx = e.field
    o = G.order
    if G.order % ctx.p == 0:
        raise NotSplit("characteristic %d divides the group order %d"
                       % (ctx.p, G.order))
    if (ctx.q - 1) % G.exponent != 0:
        raise NotSplit("F_%d has no elements of order %d"
                       % (ctx.q, G.exponent))
    hat = [[ft_group(e.entry(i, j), omega).values for j in range(k)]
           for i in range(n)]
    c_hat = [[[None] * o for _ in range(n - k)] for _ in range(n)]
    i_hat = [[[None] * o for _ in range(n)] for _ in range(k)]
    ident = gauss.identity(ctx, k)
    for chi in range(o):
        e_chi = [[hat[i][j][chi] for j in range(k)] for i in range(n)]
        e_chi_t = gauss.transpose(e_chi)
        kern = gauss.kernel_basis(ctx, e_chi_t)
        if len(kern) != n - k:
            raise RankDeficient(
                "character %d: rank %d, expected %d"
                % (chi, n - len(kern), k))
        for j, v in enumerate(kern):
            for i in range(n):
                c_hat[i][j][chi] = v[i]
        try:
            y = gauss.solve_matrix(ctx, e_chi_t, ident)
        except Inconsistent:
            raise RankDeficient("character %d: no left inverse" % chi)
        for i in range(k):
            for j in range(n):
                i_hat[i][j][chi] = y[j][i]
    def assemble(table, rows, cols):
        entries = []
        for i in range(rows):
            for j in range(cols):
                img = FourierImage(G, ctx, omega, tuple(table[i][j]))
                entries.append(ft_inverse(img))
        return KGMatrix(G, ctx, rows, cols, tuple(entries))
    c = assemble(c_hat, n, n - k)
    i_mat = assemble(i_hat, k, n)
    if kg_matmul(kg_transpose(c), e) != kg_zero(G, ctx, n - k, k):
        raise InvariantViolation("kernel matrix fails C^t E = 0")
    if kg_matmul(i_mat, e) != kg_identity(G, ctx, k):
        raise InvariantViolation("left inverse fails I E = 1")
    return c, i_mat
