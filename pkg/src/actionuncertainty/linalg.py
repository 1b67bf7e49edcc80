"""Exact dense linear algebra on payload matrices.

Pivots are chosen by a row-major scan of the not-yet-reduced rows (first
nonzero entry wins), so intermediate results are reproducible.
"""
from __future__ import annotations

import math
from typing import Sequence

from .fields import Cyclotomic, FieldContext, FieldValue, PrimeField, Rationals


def _find_pivot(rows, start, is_zero):
    for i in range(start, len(rows)):
        for j, v in enumerate(rows[i]):
            if not is_zero(v):
                return i, j
    return None


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    r = 0
    while True:
        piv = _find_pivot(rows, r, lambda v: v == 0)
        if piv is None:
            return r
        i, j = piv
        rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        inv = pow(prow[j], -1, p)
        for k in range(r + 1, len(rows)):
            row = rows[k]
            c = row[j]
            if c:
                f = c * inv % p
                rows[k] = [(x - f * y) % p for x, y in zip(row, prow)]
        r += 1


def _rank_integer_bareiss(rows: list[list[int]]) -> int:
    r, prev = 0, 1
    while True:
        piv = _find_pivot(rows, r, lambda v: v == 0)
        if piv is None:
            return r
        i, j = piv
        rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        pv = prow[j]
        for k in range(r + 1, len(rows)):
            row = rows[k]
            c = row[j]
            rows[k] = [(pv * x - c * y) // prev for x, y in zip(row, prow)]
        prev = pv
        r += 1


def _rank_field_bareiss(ctx: FieldContext, rows: list[list]) -> int:
    """Bareiss elimination with the exact division done through the field."""
    r, prev_inv = 0, ctx.one()
    mul, sub, is_zero = ctx.mul, ctx.sub, ctx.is_zero
    while True:
        piv = _find_pivot(rows, r, is_zero)
        if piv is None:
            return r
        i, j = piv
        rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        pv = prow[j]
        for k in range(r + 1, len(rows)):
            row = rows[k]
            c = row[j]
            rows[k] = [mul(sub(mul(pv, x), mul(c, y)), prev_inv) for x, y in zip(row, prow)]
        prev_inv = ctx.inv(pv)
        r += 1


def _rank_gauss(ctx: FieldContext, rows: list[list]) -> int:
    r = 0
    mul, sub, is_zero = ctx.mul, ctx.sub, ctx.is_zero
    while True:
        piv = _find_pivot(rows, r, is_zero)
        if piv is None:
            return r
        i, j = piv
        rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        inv = ctx.inv(prow[j])
        for k in range(r + 1, len(rows)):
            row = rows[k]
            if not is_zero(row[j]):
                f = mul(row[j], inv)
                rows[k] = [sub(x, mul(f, y)) for x, y in zip(row, prow)]
        r += 1


def rank_payloads(ctx: FieldContext, matrix: Sequence[Sequence]) -> int:
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    if isinstance(ctx, PrimeField):
        return _rank_mod_p(rows, ctx.p)
    if isinstance(ctx, Rationals):
        scaled = []
        for row in rows:
            den = math.lcm(*(v.denominator for v in row))
            scaled.append([int(v * den) for v in row])
        return _rank_integer_bareiss(scaled)
    if isinstance(ctx, Cyclotomic):
        scaled = []
        for row in rows:
            den = math.lcm(*(c.denominator for v in row for c in v))
            scaled.append([tuple(c * den for c in v) for v in row])
        return _rank_field_bareiss(ctx, scaled)
    return _rank_gauss(ctx, rows)


def exact_rank(matrix: Sequence[Sequence[FieldValue]]) -> int:
    """Rank of a rectangular matrix of field values over their (single) field."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    ctx = rows[0][0].ctx
    for row in rows:
        if len(row) != len(rows[0]):
            raise ValueError("ragged matrix")
        for v in row:
            if v.ctx != ctx:
                raise ValueError("mixed field contexts in one matrix")
    return rank_payloads(ctx, [[v.payload for v in row] for row in rows])


def determinant_payloads(ctx: FieldContext, matrix: Sequence[Sequence]):
    n = len(matrix)
    rows = [list(r) for r in matrix]
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    det = ctx.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if not ctx.is_zero(rows[i][c])), None)
        if piv is None:
            return ctx.zero()
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = ctx.neg(det)
        pv = rows[c][c]
        det = ctx.mul(det, pv)
        inv = ctx.inv(pv)
        for k in range(c + 1, n):
            f = rows[k][c]
            if not ctx.is_zero(f):
                f = ctx.mul(f, inv)
                rows[k] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(rows[k], rows[c])]
    return det


def determinant(matrix: Sequence[Sequence[FieldValue]]) -> FieldValue:
    ctx = matrix[0][0].ctx
    return FieldValue(ctx, determinant_payloads(ctx, [[v.payload for v in r] for r in matrix]))


def identity_payloads(ctx: FieldContext, n: int) -> list[list]:
    return [[ctx.one() if i == j else ctx.zero() for j in range(n)] for i in range(n)]


def matmul_payloads(ctx: FieldContext, a, b) -> list[list]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = ctx.zero()
            for k in range(inner):
                if not ctx.is_zero(row[k]):
                    acc = ctx.add(acc, ctx.mul(row[k], b[k][j]))
            new.append(acc)
        out.append(new)
    return out


def diagonalize(ctx: FieldContext, a: Sequence[Sequence]) -> tuple[list[list], list[list], int]:
    """Invertible Q (rows x rows), P (cols x cols) with Q A P = diag(1,..,1,0,..).

    Returns (Q, P, rank).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    r_mat = [list(row) for row in a]
    q = identity_payloads(ctx, m)
    p = identity_payloads(ctx, n)
    pivots = []
    r = 0
    # row reduction to reduced echelon form, mirrored onto Q
    for col in range(n):
        piv = next((i for i in range(r, m) if not ctx.is_zero(r_mat[i][col])), None)
        if piv is None:
            continue
        r_mat[r], r_mat[piv] = r_mat[piv], r_mat[r]
        q[r], q[piv] = q[piv], q[r]
        inv = ctx.inv(r_mat[r][col])
        r_mat[r] = [ctx.mul(inv, v) for v in r_mat[r]]
        q[r] = [ctx.mul(inv, v) for v in q[r]]
        for i in range(m):
            if i != r and not ctx.is_zero(r_mat[i][col]):
                f = r_mat[i][col]
                r_mat[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(r_mat[i], r_mat[r])]
                q[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(q[i], q[r])]
        pivots.append(col)
        r += 1
    # column operations, mirrored onto P
    def swap_cols(mat, c1, c2):
        for row in mat:
            row[c1], row[c2] = row[c2], row[c1]

    for i, col in enumerate(pivots):
        if col != i:
            swap_cols(r_mat, i, col)
            swap_cols(p, i, col)
    for i in range(len(pivots)):
        for c in range(n):
            if c != i and not ctx.is_zero(r_mat[i][c]):
                f = r_mat[i][c]
                for row in r_mat:
                    row[c] = ctx.sub(row[c], ctx.mul(f, row[i]))
                for row in p:
                    row[c] = ctx.sub(row[c], ctx.mul(f, row[i]))
    return q, p, len(pivots)


def independent_columns(ctx: FieldContext, a: Sequence[Sequence]) -> list[int]:
    """Indices of the first maximal independent set of columns, scanning left to right."""
    m = len(a)
    n = len(a[0]) if m else 0
    basis: list[tuple[int, list]] = []  # (pivot row, reduced column)
    keep = []
    for c in range(n):
        v = [a[i][c] for i in range(m)]
        for piv, b in basis:
            if not ctx.is_zero(v[piv]):
                f = ctx.div(v[piv], b[piv])
                v = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(v, b)]
        piv = next((i for i in range(m) if not ctx.is_zero(v[i])), None)
        if piv is not None:
            basis.append((piv, v))
            keep.append(c)
    return keep


def nullspace(ctx: FieldContext, a: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of {v : A v = 0}, one vector per free column of the reduced form."""
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if m else 0)
    rows = [list(r) for r in a]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if not ctx.is_zero(rows[i][col])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ctx.inv(rows[r][col])
        rows[r] = [ctx.mul(inv, v) for v in rows[r]]
        for i in range(m):
            if i != r and not ctx.is_zero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [ctx.zero()] * n
        v[free] = ctx.one()
        for i, pc in enumerate(pivots):
            v[pc] = ctx.neg(rows[i][free])
        basis.append(v)
    return basis
