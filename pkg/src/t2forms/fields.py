"""Exact arithmetic in towers of finite fields of characteristic two.

Fields are built as chains of extensions starting at GF(2).  A ``Level``
is one field in such a chain.  Its elements are plain Python ints: the
int encodes the coordinate vector over the parent level in base
``2**parent.bits``, recursively, so the bits of an element are its
coordinates over GF(2) in the product basis of the chain generators.
Consequences used throughout the package:

* addition of any two elements of a level is integer xor,
* 0 and 1 are the zero and one of every level,
* an element of a lower level embeds into every level above it with the
  same int value, and membership in a sublevel is ``x < sub.order``.

Polynomials over a level are trimmed tuples of element ints, lowest
degree first; the zero polynomial is the empty tuple.  The polynomial
helpers are duck-typed over their field argument so they also work for
``rational.FunctionField`` coefficient fields.
"""

from __future__ import annotations

import re
import string

from . import linalg

_TABLE_LIMIT = 1 << 11  # exp/log tables are built for orders up to this


class FieldError(ValueError):
    """Base class for field construction and arithmetic errors."""


class RejectsReducible(FieldError):
    """A defining polynomial has a proper factor.

    The witness pair ``factors`` multiplies back to the rejected
    polynomial (both are coefficient tuples over the base level).
    """

    def __init__(self, message, factors=None):
        super().__init__(message)
        self.factors = factors


class NotAPower(FieldError):
    """A polynomial is not the expected n-th power."""


class UnknownGenerator(FieldError):
    """An element expression refers to a name the tower does not define."""


class Level:
    """One finite field in an extension chain starting at GF(2).

    Never instantiated directly: use the module constant ``GF2`` and
    :meth:`extend`.  Levels are immutable; all operations are safe to
    share between threads.
    """

    is_finite = True

    def __init__(self, parent, poly=None, gen_name=None):
        self.parent = parent
        if parent is None:
            self.poly = None
            self.gen_name = None
            self.rel_degree = 1
            self.bits = 1
            self.gen = 1
        else:
            poly = poly_trim(poly)
            if len(poly) < 3 or poly[-1] != 1:
                raise FieldError("defining polynomial must be monic of degree >= 2")
            if gen_name is None or not gen_name.isidentifier():
                raise FieldError("extension needs an identifier generator name")
            if gen_name in parent.gen_map():
                raise FieldError(f"generator name {gen_name!r} already used in tower")
            witness = poly_factor_witness(parent, poly)
            if witness is not None:
                g, h = witness
                raise RejectsReducible(
                    f"{poly_to_str(parent, poly, gen_name)} is reducible: "
                    f"({poly_to_str(parent, g, gen_name)})"
                    f"*({poly_to_str(parent, h, gen_name)})",
                    factors=witness,
                )
            self.poly = tuple(poly)
            self.gen_name = gen_name
            self.rel_degree = len(poly) - 1
            self.bits = parent.bits * self.rel_degree
            self.gen = 1 << parent.bits
        self.order = 1 << self.bits
        self.zero = 0
        self.one = 1
        self._exp = None
        self._log = None
        self._nonresidue = None
        self._signature = (
            (None,) if parent is None else parent._signature + (self.poly, self.gen_name)
        )
        if self.order <= _TABLE_LIMIT:
            self._build_tables()

    # -- construction -------------------------------------------------

    def extend(self, poly, name=None):
        """Return a new level on top of this one.

        ``poly`` is either a coefficient tuple over this level (lowest
        degree first, including the leading 1) with an explicit ``name``,
        or a string such as ``"b^3+b+a"`` whose single new identifier
        names the generator.  Raises :class:`RejectsReducible` with a
        factorization witness if the polynomial is not irreducible.
        """
        if isinstance(poly, str):
            var, coeffs = parse_poly(self, poly)
            if name is not None and name != var:
                raise FieldError(f"polynomial variable {var!r} does not match name {name!r}")
            return Level(self, coeffs, var)
        if name is None:
            name = fresh_gen_name(self)
        return Level(self, tuple(poly), name)

    def ancestors(self):
        """The chain of levels from this one down to GF(2)."""
        out = []
        lvl = self
        while lvl is not None:
            out.append(lvl)
            lvl = lvl.parent
        return out

    def is_extension_of(self, sub):
        return any(lvl == sub for lvl in self.ancestors())

    def gen_map(self):
        """Mapping of generator names to their elements at this level."""
        out = {}
        for lvl in self.ancestors():
            if lvl.gen_name is not None:
                out[lvl.gen_name] = lvl.gen
        return out

    def spec_string(self):
        """The ``extend(...)`` expression that rebuilds this level."""
        if self.parent is None:
            return "GF2"
        inner = self.parent.spec_string()
        return f'extend({inner},"{poly_to_str(self.parent, self.poly, self.gen_name)}")'

    # -- tables --------------------------------------------------------

    def _build_tables(self):
        n = self.order - 1
        if n == 1:
            self._exp = [1]
            self._log = [0, 0]
            return
        primes = _prime_factors(n)
        g = None
        for cand in range(2, self.order):
            if all(self._pow_raw(cand, n // p) != 1 for p in primes):
                g = cand
                break
        assert g is not None
        exp = [1] * n
        cur = 1
        for i in range(1, n):
            cur = self._mul_raw(cur, g)
            exp[i] = cur
        log = [0] * self.order
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

    def _mul_raw(self, x, y):
        if self.parent is None:
            return x & y
        par = self.parent
        d = self.rel_degree
        xs = self.coeffs(x)
        ys = self.coeffs(y)
        prod = [0] * (2 * d - 1)
        for i, xc in enumerate(xs):
            if xc:
                for j, yc in enumerate(ys):
                    if yc:
                        prod[i + j] ^= par.mul(xc, yc)
        # reduce with gen**d = sum(poly[i] * gen**i), i < d
        low = self.poly[:-1]
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, pc in enumerate(low):
                    if pc:
                        prod[k - d + i] ^= par.mul(c, pc)
        return self.from_coeffs(prod[:d])

    def _pow_raw(self, x, e):
        r = 1
        b = x
        while e:
            if e & 1:
                r = self._mul_raw(r, b)
            b = self._mul_raw(b, b)
            e >>= 1
        return r

    # -- arithmetic ----------------------------------------------------

    def add(self, x, y):
        return x ^ y

    sub = add  # characteristic two

    def neg(self, x):
        return x

    def mul(self, x, y):
        if self._log is not None:
            if x == 0 or y == 0:
                return 0
            n = self.order - 1
            return self._exp[(self._log[x] + self._log[y]) % n]
        return self._mul_raw(x, y)

    def square(self, x):
        return self.mul(x, x)

    frobenius = square

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            n = self.order - 1
            return self._exp[(-self._log[x]) % n]
        return self._pow_raw(x, self.order - 2)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e):
        if e < 0:
            return self.inv(self.pow(x, -e))
        if self._log is not None and x != 0:
            n = self.order - 1
            return self._exp[(self._log[x] * e) % n]
        return self._pow_raw(x, e)

    def sqrt(self, x):
        """Inverse of the Frobenius map (the field is perfect)."""
        return self.pow(x, self.order // 2) if x else 0

    def is_zero(self, x):
        return x == 0

    def trace(self, x):
        """Absolute trace down to GF(2), returned as 0 or 1."""
        acc = x
        y = x
        for _ in range(self.bits - 1):
            y = self.square(y)
            acc ^= y
        assert acc in (0, 1)
        return acc

    def artin_schreier_solve(self, c):
        """A solution of x**2 + x = c, or None when there is none.

        The squaring map is GF(2)-linear, so the equation is solved as a
        linear system over the bit coordinates.
        """
        rows = []
        for i in range(self.bits):
            e = 1 << i
            col = self.square(e) ^ e
            rows.append(col)
        # transpose: system M z = c with M[r][i] = bit r of (e_i^2 + e_i)
        mat = [0] * self.bits
        for i, col in enumerate(rows):
            for r in range(self.bits):
                if (col >> r) & 1:
                    mat[r] |= 1 << i
        sol = linalg.solve_gf2(mat, self.bits, c)
        if sol is None:
            return None
        assert self.square(sol) ^ sol == c
        return sol

    def wp_member(self, c):
        """Whether c lies in {x**2 + x}, the Artin-Schreier subgroup."""
        return self.trace(c) == 0

    def nonresidue(self):
        """Canonical element outside {x**2+x}: the first power of the
        multiplicative generator (starting at 1) with absolute trace 1."""
        if self._nonresidue is None:
            if self._exp is None:
                raise FieldError("nonresidue needs a table-backed field")
            for v in self._exp:
                if self.trace(v) == 1:
                    self._nonresidue = v
                    break
        return self._nonresidue

    def wp_class_rep(self, c):
        """Canonical representative of c modulo {x**2+x}: 0 or the
        canonical nonresidue."""
        return 0 if self.wp_member(c) else self.nonresidue()

    # -- coordinates ---------------------------------------------------

    def coeffs(self, x):
        """Coordinates of x over the parent level, lowest first."""
        if self.parent is None:
            return (x,)
        pb = self.parent.bits
        mask = (1 << pb) - 1
        return tuple((x >> (pb * i)) & mask for i in range(self.rel_degree))

    def from_coeffs(self, cs):
        pb = self.parent.bits if self.parent else 1
        v = 0
        for i, c in enumerate(cs):
            v |= c << (pb * i)
        return v

    def degree_over(self, sub):
        if not self.is_extension_of(sub):
            raise FieldError("not an extension of the given level")
        return self.bits // sub.bits

    def coords_over(self, sub, x):
        """Coordinates of x in the product basis of this level over sub."""
        if self == sub:
            return (x,)
        out = []
        for c in self.coeffs(x):
            out.extend(self.parent.coords_over(sub, c))
        return tuple(out)

    def from_coords_over(self, sub, coords):
        if self == sub:
            (v,) = coords
            return v
        d = self.parent.degree_over(sub)
        cs = [
            self.parent.from_coords_over(sub, coords[i * d : (i + 1) * d])
            for i in range(self.rel_degree)
        ]
        return self.from_coeffs(cs)

    def basis_over(self, sub):
        n = self.degree_over(sub)
        out = []
        for t in range(n):
            coords = [0] * n
            coords[t] = 1
            out.append(self.from_coords_over(sub, coords))
        return out

    def relative_frobenius(self, sub, x, power=1):
        """x raised to |sub| ** power, a generator of Gal(self/sub)."""
        n = self.degree_over(sub)
        e = power % n
        y = x
        for _ in range(e * sub.bits):
            y = self.square(y)
        return y

    def elements(self):
        if self.order > _TABLE_LIMIT * 8:
            raise FieldError("refusing to enumerate a large field")
        return range(self.order)

    def random_element(self, rng):
        return rng.randrange(self.order)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.order)

    # -- text ----------------------------------------------------------

    def show(self, x):
        """Render an element in the generator names, e.g. ``a+1``."""
        if self.parent is None:
            return str(x & 1)
        terms = []
        for i in reversed(range(self.rel_degree)):
            c = self.coeffs(x)[i]
            if not c:
                continue
            cs = self.parent.show(c)
            if i == 0:
                terms.append(cs)
            else:
                head = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                if cs == "1":
                    terms.append(head)
                elif "+" in cs:
                    terms.append(f"{head}*({cs})")
                else:
                    terms.append(f"{head}*{cs}")
        return "+".join(terms) if terms else "0"

    def parse(self, text):
        """Parse an element expression in the tower's generator names."""
        var, coeffs = parse_poly(self, text, allow_new=False)
        assert var is None
        if len(coeffs) > 1:
            raise UnknownGenerator("expression does not reduce to a single element")
        return coeffs[0] if coeffs else 0

    def __eq__(self, other):
        return isinstance(other, Level) and self._signature == other._signature

    def __hash__(self):
        return hash(self._signature)

    def __repr__(self):
        names = ",".join(n for n in reversed([l.gen_name for l in self.ancestors()]) if n)
        if names:
            return f"GF(2^{self.bits})({names})"
        return f"GF(2^{self.bits})" if self.bits > 1 else "GF(2)"


GF2 = Level(None)


def extend_field(level, poly, name=None):
    """Functional form of :meth:`Level.extend`."""
    return level.extend(poly, name)


def fresh_gen_name(level):
    used = set(level.gen_map())
    for ch in string.ascii_lowercase:
        if ch not in used and ch not in ("x", "t"):
            return ch
    raise FieldError("ran out of generator names")


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials -------------------------------------------------------


def poly_trim(p):
    p = tuple(p)
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return p[:n]


def poly_deg(p):
    return len(p) - 1


def poly_add(field, p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = field.add(out[i], c)
    return poly_trim(out)


def poly_scale(field, c, p):
    if field.is_zero(c):
        return ()
    return poly_trim(tuple(field.mul(c, x) for x in p))


def poly_mul(field, p, q):
    if not p or not q:
        return ()
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if field.is_zero(a):
            continue
        for j, b in enumerate(q):
            if not field.is_zero(b):
                out[i + j] = field.add(out[i + j], field.mul(a, b))
    return poly_trim(out)


def poly_pow(field, p, n):
    r = (field.one,)
    b = p
    while n:
        if n & 1:
            r = poly_mul(field, r, b)
        b = poly_mul(field, b, b)
        n >>= 1
    return r


def poly_divmod(field, p, q):
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(poly_trim(p))
    dq = poly_deg(q)
    lead_inv = field.inv(q[-1])
    quot = [field.zero] * max(0, len(r) - dq)
    while len(r) - 1 >= dq and r:
        k = len(r) - 1 - dq
        c = field.mul(r[-1], lead_inv)
        quot[k] = c
        for i, qc in enumerate(q):
            r[k + i] = field.add(r[k + i], field.mul(c, qc))
        while r and field.is_zero(r[-1]):
            r.pop()
    return poly_trim(quot), poly_trim(r)


def poly_mod(field, p, q):
    return poly_divmod(field, p, q)[1]


def poly_monic(field, p):
    p = poly_trim(p)
    if not p or p[-1] == field.one:
        return p
    return poly_scale(field, field.inv(p[-1]), p)


def poly_gcd(field, p, q):
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_mod(field, a, b)
    return poly_monic(field, a)


def poly_eval(field, p, x):
    acc = field.zero
    for c in reversed(p):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_roots(field, p):
    """All roots in the coefficient field, with multiplicity.

    Exhaustive evaluation; the field must be small enough to enumerate.
    """
    p = poly_trim(p)
    if not p:
        raise FieldError("zero polynomial has every element as a root")
    roots = []
    for x in field.elements():
        if field.is_zero(poly_eval(field, p, x)):
            q = p
            while True:
                quot, rem = poly_divmod(field, q, (x, field.one))
                if rem:
                    break
                roots.append(x)
                q = quot
    return roots


def _monic_polys(field, degree):
    """Iterate all monic polynomials of exactly the given degree."""
    elems = list(field.elements())
    stack = [()]
    for _ in range(degree):
        stack = [p + (c,) for p in stack for c in elems]
    for low in stack:
        yield poly_trim(low + (field.one,))


def poly_factor_witness(field, p):
    """A nontrivial monic factorization (g, h) of p, or None if p is
    irreducible.  Root search first, then a distinct-degree gcd for
    degree 4, exhaustive trial division beyond that."""
    p = poly_monic(field, p)
    d = poly_deg(p)
    if d <= 1:
        return None
    roots = poly_roots(field, p)
    if roots:
        r = roots[0]
        g = (r, field.one)
        return g, poly_divmod(field, p, g)[0]
    if d <= 3:
        return None
    if d == 4:
        # gcd with x^(q^2) - x catches irreducible quadratic factors
        q2 = field.order**2
        xq = _xpow_mod(field, q2, p)
        g = poly_gcd(field, poly_add(field, xq, (0, field.one)), p)
        if 0 < poly_deg(g) < d:
            return g, poly_divmod(field, p, g)[0]
        return None
    for deg in range(2, d // 2 + 1):
        for g in _monic_polys(field, deg):
            quot, rem = poly_divmod(field, p, g)
            if not rem:
                return g, quot
    return None


def _xpow_mod(field, e, modulus):
    """x**e reduced modulo the given polynomial."""
    result = (field.one,)
    base = poly_mod(field, (field.zero, field.one), modulus)
    while e:
        if e & 1:
            result = poly_mod(field, poly_mul(field, result, base), modulus)
        base = poly_mod(field, poly_mul(field, base, base), modulus)
        e >>= 1
    return result


def poly_is_irreducible(field, p):
    return poly_deg(p) >= 1 and poly_factor_witness(field, p) is None


def poly_factorize(field, p):
    """Full monic factorization as a list of (irreducible, multiplicity)
    pairs, by recursive trial splitting (desk scale only)."""
    p = poly_monic(field, p)
    if poly_deg(p) < 1:
        return []
    witness = poly_factor_witness(field, p)
    if witness is None:
        return [(p, 1)]
    g, h = witness
    combined = {}
    for fac, mult in poly_factorize(field, g) + poly_factorize(field, h):
        combined[fac] = combined.get(fac, 0) + mult
    return sorted(combined.items())


def monic_divisors(field, p):
    """All monic divisors of p, including 1 and p itself."""
    factors = poly_factorize(field, p)
    divisors = [(field.one,)]
    for fac, mult in factors:
        new = []
        for d in divisors:
            cur = d
            for _ in range(mult + 1):
                new.append(cur)
                cur = poly_mul(field, cur, fac)
        divisors = new
    # deduplicate (repeated factors produce repeats)
    seen = []
    for d in divisors:
        if d not in seen:
            seen.append(d)
    return seen


def find_irreducible(field, degree, rng):
    """Random monic irreducible polynomial of the given degree."""
    while True:
        coeffs = tuple(field.random_element(rng) for _ in range(degree)) + (field.one,)
        if poly_is_irreducible(field, coeffs):
            return poly_trim(coeffs)


def poly_sqrt(field, p):
    """The square root of a polynomial that is an exact square."""
    p = poly_trim(p)
    if not p:
        return ()
    if any(c and i % 2 for i, c in enumerate(p)):
        raise NotAPower("odd-degree coefficient present, not a square")
    return poly_trim(tuple(field.sqrt(c) for c in p[::2]))


def poly_nth_root(field, p, n):
    """The unique monic q with q**n == p, for monic p.

    Write n = 2**s * u with u odd.  The 2-power part is undone by
    coefficient-wise Frobenius inverses on the x**(2**s)-supported
    polynomial; the odd part by top-down coefficient recursion, which is
    solvable because u is odd (so u equals 1 in the field).
    Raises :class:`NotAPower` when either structural stage fails.
    """
    p = poly_trim(p)
    if n <= 0:
        raise ValueError("n must be positive")
    if not p or p[-1] != field.one:
        raise NotAPower("input must be monic")
    if (len(p) - 1) % n:
        raise NotAPower("degree not divisible by n")
    if n == 1:
        return p
    s = 0
    u = n
    while u % 2 == 0:
        s += 1
        u //= 2
    r = p
    for _ in range(s):
        r = poly_sqrt(field, r)
    if u == 1:
        return r
    d = poly_deg(r) // u
    q = [field.zero] * d + [field.one]
    for j in range(1, d + 1):
        cur = poly_pow(field, tuple(q), u)
        diff = poly_add(field, r, cur)
        idx = u * d - j
        q[d - j] = diff[idx] if idx < len(diff) else field.zero
    q = poly_trim(q)
    if poly_pow(field, q, u) != r:
        raise NotAPower("polynomial is not an exact power")
    return q


# -- parsing and rendering ----------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z_0-9]*)|(\d+)|([\^\*\+\(\)]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise FieldError(f"bad character in expression: {text[pos:]!r}")
            break
        pos = m.end()
        if m.group(1):
            out.append(("name", m.group(1)))
        elif m.group(2):
            out.append(("int", int(m.group(2))))
        else:
            out.append((m.group(3), None))
    out.append(("end", None))
    return out


def parse_poly(level, text, allow_new=True):
    """Parse an expression over the level's generators.

    At most one identifier may be new; it becomes the polynomial
    variable.  Returns ``(var_name_or_None, coefficient_tuple)`` with
    coefficients as level elements, lowest degree first.
    """
    gens = level.gen_map()
    tokens = _tokenize(text)
    state = {"pos": 0, "var": None}

    def peek():
        return tokens[state["pos"]]

    def advance():
        state["pos"] += 1

    def parse_expr():
        val = parse_term()
        while peek()[0] == "+":
            advance()
            val = poly_add(level, val, parse_term())
        return val

    def parse_term():
        val = parse_factor()
        while peek()[0] == "*":
            advance()
            val = poly_mul(level, val, parse_factor())
        return val

    def parse_factor():
        val = parse_atom()
        if peek()[0] == "^":
            advance()
            kind, num = peek()
            if kind != "int":
                raise FieldError("exponent must be an integer literal")
            advance()
            val = poly_pow(level, val, num)
        return val

    def parse_atom():
        kind, data = peek()
        if kind == "(":
            advance()
            val = parse_expr()
            if peek()[0] != ")":
                raise FieldError("unbalanced parenthesis")
            advance()
            return val
        if kind == "int":
            advance()
            if data not in (0, 1):
                raise FieldError("integer literals must be 0 or 1 in characteristic two")
            return (data,) if data else ()
        if kind == "name":
            advance()
            if data in gens:
                return (gens[data],)
            if not allow_new:
                raise UnknownGenerator(f"unknown generator {data!r}")
            if state["var"] is None:
                state["var"] = data
            elif state["var"] != data:
                raise FieldError(f"two unknown names {state['var']!r} and {data!r}")
            return (level.zero, level.one)
        raise FieldError("expected a value")

    value = parse_expr()
    if peek()[0] != "end":
        raise FieldError("trailing input in expression")
    return state["var"], poly_trim(value)


def parse_element(level, text):
    return level.parse(text)


def poly_to_str(field, p, var):
    p = poly_trim(p)
    if not p:
        return "0"
    terms = []
    for i in reversed(range(len(p))):
        c = p[i]
        if field.is_zero(c):
            continue
        cs = field.show(c) if hasattr(field, "show") else str(c)
        if i == 0:
            terms.append(cs)
            continue
        head = var if i == 1 else f"{var}^{i}"
        if cs == "1":
            terms.append(head)
        elif "+" in cs:
            terms.append(f"{head}*({cs})")
        else:
            terms.append(f"{head}*{cs}")
    return "+".join(terms)
