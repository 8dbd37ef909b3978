"""Dense and bit-packed exact linear algebra for characteristic two.

Two data layouts are used:

* generic dense: a matrix is a list of rows, a row is a list of field
  elements, and everything is duck-typed over the field object (this
  path also serves the rational function field),
* packed: a row is a single int holding ``field.bits`` bits per entry.
  Row addition is integer xor.  Scalar multiples of packed rows go
  through per-chunk lookup tables cached on the field object, which is
  what makes elimination on large GF(2) and GF(4) matrices cheap.

The GF(2) helpers at the top work on plain ints with one bit per entry
and need no field object at all.
"""

from __future__ import annotations


# -- GF(2) rows as plain ints -------------------------------------------


def rref_gf2(rows, ncols):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [r for r in rows if r]
    out = []
    pivots = []
    for c in range(ncols):
        sel = None
        for i, r in enumerate(rows):
            if (r >> c) & 1:
                sel = i
                break
        if sel is None:
            continue
        piv = rows.pop(sel)
        out = [r ^ piv if (r >> c) & 1 else r for r in out]
        rows = [r ^ piv if (r >> c) & 1 else r for r in rows]
        rows = [r for r in rows if r]
        out.append(piv)
        pivots.append(c)
        if not rows:
            break
    return out, pivots


def rank_gf2(rows, ncols):
    return len(rref_gf2(rows, ncols)[0])


def kernel_gf2(rows, ncols):
    """Basis of {v : sum_c v_c * column_c = 0}, vectors as ints."""
    red, pivots = rref_gf2(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = 1 << free
        for row, p in zip(red, pivots):
            if (row >> free) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def solve_gf2(rows, ncols, rhs):
    """One solution x (as an int) of the system rows * x = rhs, or None.

    ``rhs`` packs the right hand side with bit r for equation r.
    """
    aug = [row | (((rhs >> i) & 1) << ncols) for i, row in enumerate(rows)]
    red, pivots = rref_gf2(aug, ncols)
    x = 0
    for row, p in zip(red, pivots):
        if (row >> ncols) & 1:
            x |= 1 << p
    # rows that reduced to "0 = 1" mean inconsistency
    for row in aug:
        r = row
        for prow, p in zip(red, pivots):
            if (r >> p) & 1:
                r ^= prow
        if r:
            return None
    return x


# -- packed rows over a finite level -------------------------------------


def _chunk_conf(field):
    conf = getattr(field, "_chunk_conf_cache", None)
    if conf is None:
        bits = field.bits
        ent = max(1, 12 // bits)
        conf = (ent * bits, (1 << (ent * bits)) - 1)
        field._chunk_conf_cache = conf
    return conf


def _scale_table(field, c):
    tables = getattr(field, "_scale_tables", None)
    if tables is None:
        tables = {}
        field._scale_tables = tables
    tbl = tables.get(c)
    if tbl is None:
        chunk_bits, _ = _chunk_conf(field)
        bits = field.bits
        emask = (1 << bits) - 1
        tbl = []
        for chunk in range(1 << chunk_bits):
            out = 0
            shift = 0
            while chunk:
                out |= field.mul(c, chunk & emask) << shift
                chunk >>= bits
                shift += bits
            tbl.append(out)
        tables[c] = tbl
    return tbl


def scale_row(field, row, c):
    if c == field.one or row == 0:
        return row
    if c == 0:
        return 0
    if field.bits > 12:
        bits = field.bits
        emask = (1 << bits) - 1
        out = 0
        shift = 0
        while row:
            out |= field.mul(c, row & emask) << shift
            row >>= bits
            shift += bits
        return out
    chunk_bits, cmask = _chunk_conf(field)
    tbl = _scale_table(field, c)
    out = 0
    shift = 0
    while row:
        out |= tbl[row & cmask] << shift
        row >>= chunk_bits
        shift += chunk_bits
    return out


def pack_row(field, entries):
    bits = field.bits
    row = 0
    for i, e in enumerate(entries):
        if e:
            row |= e << (i * bits)
    return row


def unpack_row(field, row, ncols):
    bits = field.bits
    emask = (1 << bits) - 1
    return [(row >> (i * bits)) & emask for i in range(ncols)]


def row_entry(field, row, c):
    bits = field.bits
    return (row >> (c * bits)) & ((1 << bits) - 1)


def _leading_col(field, row):
    return (row & -row).bit_length() - 1 if row else -1


class PackedEchelon:
    """Incrementally maintained reduced echelon form of packed rows.

    Supports early stopping: callers can stop inserting once ``rank``
    reaches a known bound, and then read off the kernel.
    """

    def __init__(self, field, ncols):
        self.field = field
        self.ncols = ncols
        self.rows = {}  # pivot column -> normalized reduced row

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, row):
        """Fully reduce a row against the stored pivot rows.

        Pivot rows are zero at every other pivot column, so one pass
        over the pivots suffices.
        """
        field = self.field
        for p, prow in self.rows.items():
            e = row_entry(field, row, p)
            if e:
                row ^= scale_row(field, prow, e)
        return row

    def insert(self, row):
        """Insert one packed row; returns True when the rank grew."""
        field = self.field
        row = self.reduce(row)
        if not row:
            return False
        c = _leading_col(field, row) // field.bits
        e = row_entry(field, row, c)
        if e != field.one:
            row = scale_row(field, row, field.inv(e))
        for p, prow in list(self.rows.items()):
            pe = row_entry(field, prow, c)
            if pe:
                self.rows[p] = prow ^ scale_row(field, row, pe)
        self.rows[c] = row
        return True

    def kernel(self):
        """Basis of the null space of the inserted rows, packed."""
        field = self.field
        bits = field.bits
        pivset = set(self.rows)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            v = field.one << (free * bits)
            for p, prow in self.rows.items():
                e = row_entry(field, prow, free)
                if e:
                    v |= e << (p * bits)
            basis.append(v)
        return basis


# -- dispatching helpers on row lists ------------------------------------


def _packable(field):
    return getattr(field, "is_finite", False) and field.bits <= 12


def kernel(field, rows, ncols):
    """Kernel basis of the linear map v -> rows * v, rows as lists."""
    if _packable(field):
        ech = PackedEchelon(field, ncols)
        for r in rows:
            ech.insert(pack_row(field, r))
        return [unpack_row(field, v, ncols) for v in ech.kernel()]
    return _kernel_generic(field, rows, ncols)


def rank(field, rows, ncols):
    if _packable(field):
        ech = PackedEchelon(field, ncols)
        for r in rows:
            ech.insert(pack_row(field, r))
        return ech.rank
    red, pivots = _rref_generic(field, rows)
    return len(pivots)


def _rref_generic(field, rows):
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    out = []
    pivots = []
    work = [r for r in rows if any(not field.is_zero(x) for x in r)]
    for c in range(ncols):
        sel = None
        for i, r in enumerate(work):
            if not field.is_zero(r[c]):
                sel = i
                break
        if sel is None:
            continue
        piv = work.pop(sel)
        inv = field.inv(piv[c])
        piv = [field.mul(inv, x) for x in piv]
        for group in (out, work):
            for r in group:
                if not field.is_zero(r[c]):
                    f = r[c]
                    for k in range(ncols):
                        r[k] = field.add(r[k], field.mul(f, piv[k]))
        work = [r for r in work if any(not field.is_zero(x) for x in r)]
        out.append(piv)
        pivots.append(c)
        if not work:
            break
    return out, pivots


def _kernel_generic(field, rows, ncols):
    red, pivots = _rref_generic(field, rows)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, p in zip(red, pivots):
            v[p] = row[free]
        basis.append(v)
    return basis


def solve(field, rows, rhs):
    """One solution of rows * x = rhs (row lists), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    red, pivots = _rref_generic(field, aug)
    x = [field.zero] * ncols
    for row, p in zip(red, pivots):
        if p == ncols:
            return None
        x[p] = row[ncols]
    return x


# -- dense matrices ------------------------------------------------------


def identity(field, n):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_mul(field, A, B):
    n = len(A)
    m = len(B[0]) if B else 0
    k = len(B)
    out = [[field.zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if field.is_zero(a):
                continue
            Bt = B[t]
            for j in range(m):
                b = Bt[j]
                if not field.is_zero(b):
                    Oi[j] = field.add(Oi[j], field.mul(a, b))
    return out


def mat_vec(field, A, v):
    out = []
    for row in A:
        acc = field.zero
        for a, x in zip(row, v):
            if not field.is_zero(a) and not field.is_zero(x):
                acc = field.add(acc, field.mul(a, x))
        out.append(acc)
    return out


def mat_trace(field, A):
    acc = field.zero
    for i in range(len(A)):
        acc = field.add(acc, A[i][i])
    return acc


def second_coefficient(field, A):
    """Sum of the principal 2x2 minors, the second elementary symmetric
    function of the eigenvalues (signs are immaterial here)."""
    n = len(A)
    acc = field.zero
    running = field.zero
    for i in range(n):
        d = A[i][i]
        if not field.is_zero(d):
            acc = field.add(acc, field.mul(d, running))
            running = field.add(running, d)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = A[i][j], A[j][i]
            if not field.is_zero(a) and not field.is_zero(b):
                acc = field.add(acc, field.mul(a, b))
    return acc


def sparse_trace(field, entries):
    acc = field.zero
    for (r, c), v in entries.items():
        if r == c:
            acc = field.add(acc, v)
    return acc


def sparse_second_coefficient(field, entries):
    """Same as :func:`second_coefficient` for {(row, col): value} dicts."""
    acc = field.zero
    running = field.zero
    for (r, c), v in sorted(entries.items()):
        if r == c and not field.is_zero(v):
            acc = field.add(acc, field.mul(v, running))
            running = field.add(running, v)
    for (r, c), v in entries.items():
        if r < c:
            w = entries.get((c, r))
            if w is not None and not field.is_zero(w):
                acc = field.add(acc, field.mul(v, w))
    return acc


def charpoly(field, A):
    """Monic characteristic polynomial of a square matrix, low degree
    first, by Hessenberg reduction and the Hessenberg recurrence."""
    n = len(A)
    if n == 0:
        return (field.one,)
    H = [list(r) for r in A]
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if not field.is_zero(H[i][j]):
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in range(n):
                H[r][piv], H[r][j + 1] = H[r][j + 1], H[r][piv]
        inv = field.inv(H[j + 1][j])
        for i in range(j + 2, n):
            if field.is_zero(H[i][j]):
                continue
            f = field.mul(H[i][j], inv)
            Hi, Hp = H[i], H[j + 1]
            for c in range(n):
                if not field.is_zero(Hp[c]):
                    Hi[c] = field.add(Hi[c], field.mul(f, Hp[c]))
            for r in range(n):
                if not field.is_zero(H[r][i]):
                    H[r][j + 1] = field.add(H[r][j + 1], field.mul(f, H[r][i]))
    # p_k = (x + h_kk) p_{k-1} + sum_i h_ik (h_{i+1,i} ... h_{k,k-1}) p_{i-1}
    polys = [(field.one,)]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        pk = [field.zero] + list(prev)  # x * p_{k-1}
        d = H[k - 1][k - 1]
        if not field.is_zero(d):
            for i, c in enumerate(prev):
                pk[i] = field.add(pk[i], field.mul(d, c))
        prod = field.one
        for i in range(k - 1, 0, -1):
            prod = field.mul(prod, H[i][i - 1])
            if field.is_zero(prod):
                break
            coef = field.mul(H[i - 1][k - 1], prod)
            if not field.is_zero(coef):
                for t, c in enumerate(polys[i - 1]):
                    pk[t] = field.add(pk[t], field.mul(coef, c))
        polys.append(tuple(pk))
    return polys[n]
