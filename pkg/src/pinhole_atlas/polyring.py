"""Exact multivariate polynomial arithmetic, term orders, and Groebner tooling.

Coefficients are arbitrary-precision rationals (python ints where possible,
Fraction otherwise); no floating point anywhere.  Monomials are sparse
tuples of (variable index, exponent) over a Universe that fixes the
canonical descending variable order and the block (group) structure used
for multigrading.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
import heapq
import itertools
import time


class UniverseMismatch(ValueError):
    """Operands do not share one variable universe."""


class ZeroPolynomial(ValueError):
    """The zero polynomial has no leading term."""


class PreconditionViolated(ValueError):
    """A mode hypothesis of quotient_by_variable failed."""


class UnverifiedBasis(ValueError):
    """A certificate-consuming operation was given a non-Verified certificate."""


class DegreeTooLarge(ValueError):
    """standard_monomial_count is restricted to desk-scale total degree."""


class ParseError(ValueError):
    """Malformed polynomial text; carries line and column."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# universe and monomials
# ---------------------------------------------------------------------------

class Universe:
    """Ordered variable set with a block structure.

    Index 0 is the most expensive variable of the canonical order; groups
    are labelled and keep their first-appearance order, which is also the
    slot order of multidegrees.
    """

    def __init__(self, names, groups):
        if len(names) != len(groups):
            raise ValueError("names and groups must align")
        self.names = tuple(names)
        self.groups = tuple(groups)
        self._index = {n: i for i, n in enumerate(self.names)}
        if len(self._index) != len(self.names):
            raise ValueError("duplicate variable names")
        labels = []
        for g in groups:
            if g not in labels:
                labels.append(g)
        self.group_labels = tuple(labels)
        self._group_slot = {g: k for k, g in enumerate(labels)}
        gv = {g: [] for g in labels}
        for i, g in enumerate(groups):
            gv[g].append(i)
        self.group_vars = {g: tuple(v) for g, v in gv.items()}
        self.var_group_slot = tuple(self._group_slot[g] for g in groups)

    @property
    def size(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def group_slot(self, label):
        return self._group_slot[label]

    def multidegree_from(self, spec):
        """Normalize a {group: degree} dict or full tuple to a tuple."""
        if isinstance(spec, dict):
            unknown = set(spec) - set(self.group_labels)
            if unknown:
                raise KeyError(f"unknown groups {sorted(unknown)}")
            return tuple(spec.get(g, 0) for g in self.group_labels)
        t = tuple(spec)
        if len(t) != len(self.group_labels):
            raise ValueError("multidegree length mismatch")
        return t

    def __eq__(self, other):
        return self is other or (isinstance(other, Universe)
                                 and self.names == other.names
                                 and self.groups == other.groups)

    def __hash__(self):
        return hash((self.names, self.groups))

    def __repr__(self):
        return f"Universe({len(self.names)} vars, {len(self.group_labels)} groups)"


class Monomial:
    """Sparse monomial: tuple of (var index, positive exponent), ascending."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps=()):
        self.exps = tuple(exps)
        self._hash = hash(self.exps)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self.exps == other.exps

    @property
    def degree(self):
        return sum(e for _, e in self.exps)

    def is_unit(self):
        return not self.exps

    def is_squarefree(self):
        return all(e == 1 for _, e in self.exps)

    def vars(self):
        return tuple(v for v, _ in self.exps)

    def exponent(self, v):
        for w, e in self.exps:
            if w == v:
                return e
        return 0

    def mul(self, other):
        return Monomial(_merge(self.exps, other.exps, 1))

    def divides(self, other):
        a, b = self.exps, other.exps
        j = 0
        lb = len(b)
        for va, ea in a:
            while j < lb and b[j][0] < va:
                j += 1
            if j == lb or b[j][0] != va or b[j][1] < ea:
                return False
            j += 1
        return True

    def div(self, other):
        """self / other; caller must ensure divisibility."""
        return Monomial(_merge(self.exps, other.exps, -1))

    def lcm(self, other):
        a, b = dict(self.exps), dict(other.exps)
        keys = sorted(set(a) | set(b))
        return Monomial(tuple((v, max(a.get(v, 0), b.get(v, 0))) for v in keys))

    def coprime(self, other):
        a, b = self.exps, other.exps
        i = j = 0
        while i < len(a) and j < len(b):
            va, vb = a[i][0], b[j][0]
            if va == vb:
                return False
            if va < vb:
                i += 1
            else:
                j += 1
        return True

    def degree_vector(self, universe):
        out = [0] * len(universe.group_labels)
        for v, e in self.exps:
            out[universe.var_group_slot[v]] += e
        return tuple(out)

    def __repr__(self):
        return "Monomial(%s)" % (self.exps,)


def _merge(a, b, sign):
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va < vb:
            out.append((va, ea))
            i += 1
        elif vb < va:
            if sign < 0:
                raise ValueError("not divisible")
            out.append((vb, eb))
            j += 1
        else:
            e = ea + sign * eb
            if e < 0:
                raise ValueError("not divisible")
            if e:
                out.append((va, e))
            i += 1
            j += 1
    out.extend(a[i:])
    if sign < 0:
        if j < len(b):
            raise ValueError("not divisible")
    else:
        out.extend(b[j:])
    return tuple(out)


ONE = Monomial(())


# ---------------------------------------------------------------------------
# term orders
# ---------------------------------------------------------------------------

class TermOrder:
    """Strict total monomial order.  key(m) grows with the monomial."""

    name = "order"

    def key(self, mono):
        raise NotImplementedError

    def describe(self):
        return self.name

    def sort_terms(self, terms):
        """Sort dict items descending by the order."""
        return sorted(terms, key=lambda mc: self.key(mc[0]), reverse=True)


class Lex(TermOrder):
    def __init__(self, universe, sequence=None, name=None):
        self.universe = universe
        self.sequence = tuple(sequence) if sequence is not None else tuple(range(universe.size))
        self._pos = {v: i for i, v in enumerate(self.sequence)}
        self.name = name or "lex"

    def key(self, mono):
        return self.key_pairs(mono.exps)

    def key_pairs(self, pairs):
        out = [0] * len(self.sequence)
        pos = self._pos
        for v, e in pairs:
            out[pos[v]] = e
        return tuple(out)


class GRevLex(TermOrder):
    def __init__(self, universe, sequence=None, name=None):
        self.universe = universe
        self.sequence = tuple(sequence) if sequence is not None else tuple(range(universe.size))
        self._pos = {v: i for i, v in enumerate(self.sequence)}
        self.name = name or "grevlex"

    def key(self, mono):
        return self.key_pairs(mono.exps)

    def key_pairs(self, pairs):
        n = len(self.sequence)
        out = [0] * (n + 1)
        pos = self._pos
        deg = 0
        for v, e in pairs:
            out[n - pos[v]] = -e
            deg += e
        out[0] = deg
        return tuple(out)


class ProductBlock(TermOrder):
    """Product order: compare by the first block's order, ties to the next.

    blocks: inner TermOrders over pairwise disjoint variable sets, most
    significant first.  A ProductBlock([on p, on A]) is a product order
    with A < p.
    """

    def __init__(self, blocks, name=None):
        self.blocks = tuple(blocks)
        self.name = name or "x".join(b.name for b in blocks)
        seen = set()
        for b in self.blocks:
            vs = set(b.sequence)
            if vs & seen:
                raise ValueError("product blocks must be disjoint")
            seen |= vs
        self._block_of = {}
        for k, b in enumerate(self.blocks):
            for v in b.sequence:
                self._block_of[v] = k

    def key(self, mono):
        nblocks = len(self.blocks)
        parts = [[] for _ in range(nblocks)]
        block_of = self._block_of
        for pair in mono.exps:
            parts[block_of[pair[0]]].append(pair)
        key = ()
        for b, p in zip(self.blocks, parts):
            key = key + b.key_pairs(p)
        return key


def scheme_order(universe, scheme, sequence=None, name=None):
    if scheme == "lex":
        return Lex(universe, sequence, name)
    if scheme == "grevlex":
        return GRevLex(universe, sequence, name)
    raise ValueError(f"unknown scheme {scheme!r}")


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _normalize_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """Exact polynomial: dict Monomial -> nonzero rational coefficient."""

    __slots__ = ("u", "terms", "_ev")

    def __init__(self, universe, terms=None):
        self.u = universe
        t = {}
        if terms:
            for m, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    c0 = t.get(m)
                    c = c if c0 is None else c0 + c
                    if c:
                        t[m] = c
                    elif c0 is not None:
                        del t[m]
        self.terms = t

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, universe):
        return cls(universe)

    @classmethod
    def const(cls, universe, c):
        return cls(universe, {ONE: c} if c else {})

    @classmethod
    def variable(cls, universe, name_or_index):
        v = name_or_index if isinstance(name_or_index, int) else universe.index(name_or_index)
        return cls(universe, {Monomial(((v, 1),)): 1})

    # -- basics -------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.u == other.u and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {ONE: other}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if self.u is not other.u and self.u != other.u:
            raise UniverseMismatch("operands live in different universes")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return self + Polynomial.const(self.u, other)
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            elif m in t:
                del t[m]
        out = Polynomial(self.u)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial(self.u)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if not other:
                return Polynomial(self.u)
            out = Polynomial(self.u)
            out.terms = {m: _normalize_coeff(c * other) for m, c in self.terms.items()}
            return out
        self._check(other)
        t = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma.mul(mb)
                s = t.get(m, 0) + ca * cb
                if s:
                    t[m] = s
                else:
                    t.pop(m, None)
        out = Polynomial(self.u)
        out.terms = t
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        assert isinstance(n, int) and n >= 0
        out = Polynomial.const(self.u, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def mul_term(self, coeff, mono):
        if not coeff:
            return Polynomial(self.u)
        out = Polynomial(self.u)
        out.terms = {m.mul(mono): _normalize_coeff(c * coeff) for m, c in self.terms.items()}
        return out

    # -- structure ----------------------------------------------------------

    def support_vars(self):
        s = set()
        for m in self.terms:
            s.update(m.vars())
        return s

    def multidegree(self):
        """Common degree vector over groups; None when not multihomogeneous."""
        it = iter(self.terms)
        try:
            first = next(it)
        except StopIteration:
            return None
        d = first.degree_vector(self.u)
        for m in it:
            if m.degree_vector(self.u) != d:
                return None
        return d

    def degree_in_group(self, label):
        slot = self.u.group_slot(label)
        return max((m.degree_vector(self.u)[slot] for m in self.terms), default=0)

    def total_degree(self):
        return max((m.degree for m in self.terms), default=0)

    def is_multilinear_in(self, label):
        """Degree in the group is 0 or 1, uniformly across terms."""
        slot = self.u.group_slot(label)
        degs = {m.degree_vector(self.u)[slot] for m in self.terms}
        return degs <= {0} or degs <= {1}

    def divisible_by_variable(self, v):
        return bool(self.terms) and all(m.exponent(v) >= 1 for m in self.terms)

    def divide_by_variable(self, v):
        xm = Monomial(((v, 1),))
        out = Polynomial(self.u)
        out.terms = {m.div(xm): c for m, c in self.terms.items()}
        return out

    def substitute(self, assignment):
        """Partial substitution {var index: rational}; exact."""
        out_terms = {}
        for m, c in self.terms.items():
            coeff = c
            rest = []
            for v, e in m.exps:
                if v in assignment:
                    coeff = coeff * assignment[v] ** e
                    if not coeff:
                        break
                else:
                    rest.append((v, e))
            if coeff:
                mm = Monomial(tuple(rest))
                s = out_terms.get(mm, 0) + coeff
                if s:
                    out_terms[mm] = _normalize_coeff(s)
                else:
                    del out_terms[mm]
        out = Polynomial(self.u)
        out.terms = out_terms
        return out

    def evaluate(self, values):
        """Evaluate at a full point; `values` indexed by variable index."""
        s = 0
        for m, c in self.terms.items():
            p = c
            for v, e in m.exps:
                p = p * values[v] ** e
            s = s + p
        return s

    def compiled(self):
        """Compile to a fast evaluator f(values_list) over ints/Fractions."""
        try:
            return self._ev
        except AttributeError:
            pass
        lines = ["def _f(v):", " s = 0"]
        chunk = []
        for m, c in self.terms.items():
            factors = [repr(int(c)) if isinstance(c, int) or c.denominator == 1
                       else f"Fraction({c.numerator},{c.denominator})"]
            for var, e in m.exps:
                factors.extend([f"v[{var}]"] * e if e <= 3 else [f"v[{var}]**{e}"])
            chunk.append("*".join(factors))
            if len(chunk) == 64:
                lines.append(" s += " + "+".join(chunk))
                chunk = []
        if chunk:
            lines.append(" s += " + "+".join(chunk))
        lines.append(" return s")
        ns = {"Fraction": Fraction}
        exec("\n".join(lines), ns)
        self._ev = ns["_f"]
        return self._ev

    # -- normal form and rendering ------------------------------------------

    def content(self):
        """Positive rational c with self/c integer-primitive; 0 for zero."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            f = Fraction(c)
            num = gcd(num, f.numerator)
            den = den * f.denominator // gcd(den, f.denominator)
        return Fraction(num, den)

    def canonical(self):
        """Integer-primitive form with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        lead = max(self.terms, key=_default_key_fn(self.u))
        if self.terms[lead] < 0:
            c = -c
        out = Polynomial(self.u)
        out.terms = {m: int(Fraction(v) / c) for m, v in self.terms.items()}
        return out

    def sorted_terms(self, order=None):
        order = order or default_order(self.u)
        return order.sort_terms(self.terms.items())

    def render(self, order=None):
        """Canonical text: terms descending, `^` powers, exact coefficients."""
        if not self.terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms(order)):
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            c = abs(c)
            factors = []
            for v, e in m.exps:
                nm = self.u.names[v]
                factors.append(nm if e == 1 else f"{nm}^{e}")
            body = "*".join(factors)
            if not body:
                body = str(c)
            elif c != 1:
                body = f"{c}*{body}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        r = self.render()
        return r if len(r) <= 120 else r[:117] + "..."


def default_order(universe):
    """Canonical variable order + GRevLex over the universe."""
    o = getattr(universe, "_default_order", None)
    if o is None:
        o = GRevLex(universe)
        universe._default_order = o
    return o


def _default_key_fn(universe):
    return default_order(universe).key


def parse_polynomial(universe, text, line=1):
    """Parse the canonical text format back into a Polynomial."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial", line, 1)
    tokens = _tokenize(s, line)
    terms = []
    i = 0
    n = len(tokens)
    sign = 1
    while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
        if tokens[i][1] == "-":
            sign = -sign
        i += 1
    while i < n:
        coeff = Fraction(sign)
        exps = {}
        saw = False
        expect_factor = True
        while i < n:
            kind, val, col = tokens[i]
            if kind == "num":
                if not expect_factor:
                    raise ParseError("missing operator", line, col)
                coeff *= val
                saw, expect_factor = True, False
                i += 1
            elif kind == "name":
                if not expect_factor:
                    raise ParseError("missing operator", line, col)
                try:
                    v = universe.index(val)
                except KeyError:
                    raise ParseError(f"unknown variable {val!r}", line, col)
                e = 1
                if i + 1 < n and tokens[i + 1][0] == "pow":
                    e = tokens[i + 1][1]
                    i += 1
                exps[v] = exps.get(v, 0) + e
                saw, expect_factor = True, False
                i += 1
            elif kind == "op" and val == "*":
                if expect_factor:
                    raise ParseError("misplaced '*'", line, col)
                expect_factor = True
                i += 1
            elif kind == "op" and val in "+-":
                break
            else:
                raise ParseError(f"unexpected token {val!r}", line, col)
        if not saw or expect_factor:
            raise ParseError("dangling operator", line, tokens[min(i, n - 1)][2])
        terms.append((Monomial(tuple(sorted(exps.items()))), coeff))
        sign = 1
        got_sep = False
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            got_sep = True
            i += 1
        if not got_sep and i < n:
            raise ParseError("missing operator", line, tokens[i][2])
        if got_sep and i >= n:
            raise ParseError("dangling sign", line, tokens[-1][2])
    return Polynomial(universe, terms)


def _tokenize(s, line):
    out = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*":
            out.append(("op", ch, i + 1))
            i += 1
        elif ch == "^":
            j = i + 1
            while j < len(s) and s[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("bad exponent", line, i + 1)
            out.append(("pow", int(s[i + 1:j]), i + 1))
            i = j
        elif ch.isdigit():
            j = i
            while j < len(s) and (s[j].isdigit() or s[j] == "/"):
                j += 1
            try:
                out.append(("num", Fraction(s[i:j]), i + 1))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad number {s[i:j]!r}", line, i + 1)
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            out.append(("name", s[i:j], i + 1))
            i = j
        else:
            raise ParseError(f"bad character {ch!r}", line, i + 1)
    return out


# ---------------------------------------------------------------------------
# division, S-pairs, Groebner verification
# ---------------------------------------------------------------------------

def leading_term(f, order):
    """(coefficient, Monomial) of the order-maximal term of f != 0."""
    if not f.terms:
        raise ZeroPolynomial("leading term of the zero polynomial")
    m = max(f.terms, key=order.key)
    return f.terms[m], m


def divide(f, divisors, order):
    """Multivariate division: f = sum q_i g_i + r, exact and deterministic.

    Divisors are tried in list order; terms of the running polynomial are
    processed in descending order.  No term of r is divisible by any
    leading monomial of the divisors.
    """
    for g in divisors:
        if not g.terms:
            raise ZeroPolynomial("zero divisor")
    u = f.u
    leads = [leading_term(g, order) for g in divisors]
    quots = [Polynomial(u) for _ in divisors]
    r = Polynomial(u)
    work = dict(f.terms)
    keyf = order.key
    heap = [(_neg(keyf(m)), m) for m in work]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m, 0)
        if not c:
            continue
        for idx, (lc, lm) in enumerate(leads):
            if lm.divides(m):
                shift = m.div(lm)
                factor = _normalize_coeff(Fraction(c) / Fraction(lc))
                quots[idx].terms[shift] = quots[idx].terms.get(shift, 0) + factor
                del work[m]
                for gm, gc in divisors[idx].terms.items():
                    if gm is lm or gm == lm:
                        continue
                    mm = gm.mul(shift)
                    before = work.get(mm, 0)
                    after = before - factor * gc
                    if after:
                        work[mm] = _normalize_coeff(after)
                        if not before:
                            heapq.heappush(heap, (_neg(keyf(mm)), mm))
                    else:
                        work.pop(mm, None)
                break
        else:
            r.terms[m] = c
            del work[m]
    quots = [Polynomial(u, q.terms) for q in quots]
    return quots, r


def _neg(key):
    return tuple(-x for x in key)


def s_polynomial(f, g, order):
    """S(f, g) = lcm(in(f), in(g)) * (f/in(f) - g/in(g))."""
    cf, mf = leading_term(f, order)
    cg, mg = leading_term(g, order)
    l = mf.lcm(mg)
    a = f.mul_term(Fraction(1, 1) / Fraction(cf), l.div(mf))
    b = g.mul_term(Fraction(1, 1) / Fraction(cg), l.div(mg))
    return a - b


@dataclass(frozen=True)
class ReductionLimits:
    """Resource limits for verification; exhaustion is Inconclusive, never a pass."""
    max_pairs: int | None = None
    max_poly_terms: int | None = None
    wallclock: float | None = None


@dataclass
class GBCertificate:
    generators: tuple
    order: TermOrder
    status: str                      # "verified" | "refuted" | "inconclusive"
    squarefree_initial: bool
    witness: tuple | None = None     # (i, j) of a refuting S-pair
    reason: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def verified(self):
        return self.status == "verified"


def is_radical_certified(cert):
    """Squarefree-initial sufficient condition for radicality (certificate only)."""
    if cert.status != "verified":
        raise UnverifiedBasis("radicality certificate needs a verified basis")
    return cert.squarefree_initial


def _int_terms(f):
    """Clear denominators and content: integer-primitive term dict."""
    if not f.terms:
        return {}
    c = f.content()
    return {m: int(Fraction(v) / c) for m, v in f.terms.items()}


def _strip_content(terms):
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            return terms
    if g > 1:
        for m in terms:
            terms[m] //= g
    return terms


def _top_reduces_to_zero(terms, leads, tails, order, max_terms, key_cache=None):
    """Fraction-free top-reduction of an integer term dict against the basis.

    Returns "zero", "nonzero", or "limit".  Only the leading term is ever
    reduced; an irreducible lead certifies a nonzero remainder.
    """
    if key_cache is None:
        key_cache = {}
    raw = order.key

    def negkey(m):
        k = key_cache.get(m)
        if k is None:
            k = tuple(-x for x in raw(m))
            key_cache[m] = k
        return k

    work = dict(terms)
    heap = [(negkey(m), m) for m in work]
    heapq.heapify(heap)
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m, 0)
        if not c:
            continue
        hit = -1
        for idx, (lc, lm) in enumerate(leads):
            if lm.divides(m):
                hit = idx
                break
        if hit < 0:
            return "nonzero"
        lc, lm = leads[hit]
        d = gcd(c, lc)
        scale = abs(lc // d)
        mult = c // d if lc > 0 else -(c // d)
        if scale != 1:
            for mm in work:
                work[mm] *= scale
        shift = m.div(lm)
        del work[m]
        for gm, gc in tails[hit]:
            mm = gm.mul(shift)
            before = work.get(mm, 0)
            after = before - mult * gc
            if after:
                work[mm] = after
                if not before:
                    heapq.heappush(heap, (negkey(mm), mm))
            else:
                work.pop(mm, None)
        steps += 1
        if max_terms is not None and len(work) > max_terms:
            return "limit"
        if steps % 32 == 0 and work:
            _strip_content(work)
    return "zero"


def verify_groebner(basis, order, limits=ReductionLimits()):
    """Buchberger S-pair verification with sound skips and hard limits.

    Status is "verified" only when every S-pair is accounted for: reduced
    to zero, coprime leads (first criterion), or chain-skipped via an
    already-verified intermediate (second criterion).  Hitting a limit
    yields "inconclusive", never a silent pass.
    """
    G = [g for g in basis]
    for g in G:
        if not g.terms:
            raise ZeroPolynomial("zero polynomial in basis")
    leads = [leading_term(g, order) for g in G]
    tails = []
    ints = []
    for g, (lc, lm) in zip(G, leads):
        t = _int_terms(g)
        ints.append(t)
        tails.append(tuple((m, c) for m, c in t.items() if m != lm))
    int_leads = [(t[lm], lm) for t, (_, lm) in zip(ints, leads)]
    squarefree = all(lm.is_squarefree() for _, lm in leads)
    n = len(G)
    stats = {"pairs": 0, "reduced": 0, "coprime_skips": 0, "chain_skips": 0}
    done = set()
    deadline = None
    if limits.wallclock is not None:
        deadline = time.monotonic() + limits.wallclock
    lms = [lm for _, lm in leads]
    key_cache = {}
    for i in range(n):
        for j in range(i + 1, n):
            stats["pairs"] += 1
            if lms[i].coprime(lms[j]):
                stats["coprime_skips"] += 1
                done.add((i, j))
                continue
            l = lms[i].lcm(lms[j])
            chained = False
            for k in range(n):
                if k == i or k == j:
                    continue
                if lms[k].divides(l):
                    a = (i, k) if i < k else (k, i)
                    b = (k, j) if k < j else (j, k)
                    if a in done and b in done:
                        chained = True
                        break
            if chained:
                stats["chain_skips"] += 1
                done.add((i, j))
                continue
            if limits.max_pairs is not None and stats["reduced"] >= limits.max_pairs:
                return GBCertificate(tuple(G), order, "inconclusive", squarefree,
                                     reason="max_pairs exhausted", stats=stats)
            if deadline is not None and time.monotonic() > deadline:
                return GBCertificate(tuple(G), order, "inconclusive", squarefree,
                                     reason="wallclock exhausted", stats=stats)
            s_terms = _spair_int_terms(ints[i], int_leads[i], ints[j], int_leads[j], l)
            stats["reduced"] += 1
            res = _top_reduces_to_zero(s_terms, int_leads, tails, order,
                                       limits.max_poly_terms, key_cache)
            if res == "zero":
                done.add((i, j))
            elif res == "nonzero":
                return GBCertificate(tuple(G), order, "refuted", squarefree,
                                     witness=(i, j), stats=stats)
            else:
                return GBCertificate(tuple(G), order, "inconclusive", squarefree,
                                     reason="max_poly_terms exhausted", stats=stats)
    return GBCertificate(tuple(G), order, "verified", squarefree, stats=stats)


def _spair_int_terms(fi, li, fj, lj, l):
    """Integer S-pair (lc_j/d)*shift_i*f_i - (lc_i/d)*shift_j*f_j."""
    ci, mi = li
    cj, mj = lj
    d = gcd(ci, cj)
    a, b = cj // d, ci // d
    si, sj = l.div(mi), l.div(mj)
    out = {}
    for m, c in fi.items():
        out[m.mul(si)] = a * c
    for m, c in fj.items():
        mm = m.mul(sj)
        s = out.get(mm, 0) - b * c
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


# ---------------------------------------------------------------------------
# quotient by a variable
# ---------------------------------------------------------------------------

def is_well_supported(g, labels):
    """Def of well-supportedness: multilinear on the groups and every product
    of one supported variable per nonempty-support group divides some term."""
    u = g.u
    supports = []
    for lab in labels:
        if not g.is_multilinear_in(lab):
            return False
        sup = sorted(set(g.support_vars()) & set(u.group_vars[lab]))
        if sup:
            supports.append(sup)
    if not supports:
        return True
    monos = [set(m.vars()) for m in g.terms]
    for combo in itertools.product(*supports):
        want = set(combo)
        if not any(want <= mv for mv in monos):
            return False
    return True


def quotient_by_variable(G, var, order, mode):
    """Groebner basis of <G> : x via the variable-stripping lemmas.

    mode "grevlex_cheapest": order must be a global GRevLex whose cheapest
    variable is x.  mode "wellsupported_product": order must be a product
    of blocks; every g in G must be multilinear and well-supported on the
    blocks up to and including x's block, and x cheapest in its block.
    Preconditions are checked, not assumed; G itself is expected to be a
    Groebner basis for `order` (the caller's obligation, certified
    upstream).
    """
    if not G:
        return []
    if isinstance(var, str):
        var = G[0].u.index(var)
    if mode == "grevlex_cheapest":
        if not isinstance(order, GRevLex):
            raise PreconditionViolated("grevlex_cheapest requires a global GRevLex order")
        if order.sequence[-1] != var:
            raise PreconditionViolated("quotient variable is not globally cheapest")
    elif mode == "wellsupported_product":
        if not isinstance(order, ProductBlock):
            raise PreconditionViolated("wellsupported_product requires a product order")
        bidx = order._block_of.get(var)
        if bidx is None:
            raise PreconditionViolated("variable not covered by the order")
        block = order.blocks[bidx]
        if block.sequence[-1] != var:
            raise PreconditionViolated("quotient variable is not cheapest in its block")
        if G:
            u = G[0].u
            lead_labels = []
            seen = set()
            for b in order.blocks[:bidx + 1]:
                for v in b.sequence:
                    lab = u.groups[v]
                    if lab not in seen:
                        seen.add(lab)
                        lead_labels.append(lab)
            for g in G:
                if not is_well_supported(g, lead_labels):
                    raise PreconditionViolated(
                        "a basis element is not multilinear and well-supported "
                        "on the leading blocks")
    else:
        raise PreconditionViolated(f"unknown mode {mode!r}")
    out = []
    for g in G:
        if g.divisible_by_variable(var):
            out.append(g.divide_by_variable(var))
        else:
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# standard monomials / Hilbert function values
# ---------------------------------------------------------------------------

def standard_monomial_count(universe, lead_monomials, multidegree):
    """Number of monomials of the multidegree divisible by no given lead.

    This is the multigraded Hilbert function value of the quotient by the
    initial ideal.  Desk scale: total degree <= 6.
    """
    d = universe.multidegree_from(multidegree)
    if sum(d) > 6:
        raise DegreeTooLarge("total degree above desk scale (6)")
    per_group = []
    for g, deg in zip(universe.group_labels, d):
        if deg == 0:
            continue
        vs = universe.group_vars[g]
        per_group.append([c for c in
                          itertools.combinations_with_replacement(vs, deg)])
    leads = [m for m in lead_monomials]
    count = 0
    for combo in itertools.product(*per_group):
        exps = {}
        for tup in combo:
            for v in tup:
                exps[v] = exps.get(v, 0) + 1
        m = Monomial(tuple(sorted(exps.items())))
        if not any(lm.divides(m) for lm in leads):
            count += 1
    return count


def monomial_count_no_leads(universe, multidegree):
    """Closed form: product over groups of C(n_g - 1 + d_g, d_g)."""
    d = universe.multidegree_from(multidegree)
    total = 1
    for g, deg in zip(universe.group_labels, d):
        n = len(universe.group_vars[g])
        total *= comb(n - 1 + deg, deg)
    return total


def map_variables(f, mapping, target_universe=None):
    """Relabel variables by an index map (e.g. a symmetry or a transport
    into another universe); coefficients unchanged."""
    u = target_universe or f.u
    terms = {}
    for m, c in f.terms.items():
        mono = Monomial(tuple(sorted((mapping[v], e) for v, e in m.exps)))
        terms[mono] = terms.get(mono, 0) + c
    return Polynomial(u, terms)
