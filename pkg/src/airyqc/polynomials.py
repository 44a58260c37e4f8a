"""Sparse exact polynomials for the w-coordinate form of the recursion.

Two closely related generating polynomials are built from the correlator
table (w_i = 1/z_i^2 turns the z-space generating functions into honest
polynomials):

    omega_{g,n} = sum <tau_a>_g prod (2a_i+1)!! w_i^(a_i+1)      integer exponents
    Omega_{g,n} = sum <tau_a>_g prod (2a_i-1)!! w_i^(a_i+1/2)    half-integer exponents

Both are symmetric, so they are stored one representative per exponent
orbit: a map from the descending-sorted exponent tuple to the coefficient
carried by *each* monomial in that orbit.  Half-integer exponents are
stored as integer half-steps (w^(5/2) <-> 5), keeping all arithmetic in
the rational domain.

The module also implements, as executable identities, the one-step
recursions that rebuild omega_{g,n+1} and Omega_{g,n+1} from lower cells,
together with the transfer operators

    D_{u,v} x^m      = uv (u^m + 3 u^(m-1) v + ... + (2m+1) v^m)
    calD_{u,v} x^(a-1/2) = u v^(1/2) (u^(a+1) + u^a v + ... + v^(a+1))

that encode the contribution of the two-point function to the recursion.
omega_{0,3} = w1 w2 w3 and omega_{1,1} = w1^2/8 (and their Omega
counterparts) are seeded base cells: the recursion step for either target
would need the excluded two-point cell.
"""

from __future__ import annotations

from fractions import Fraction

from .core import HALF, ZERO, double_factorial, bounded_partitions, multiset_permutations, orbit_size, rat_str
from .correlators import CorrelatorTable, is_stable

__all__ = [
    "SparseSymPoly",
    "HalfPowerPoly",
    "omega_from_correlators",
    "tW_from_correlators",
    "Omega_from_correlators",
    "omega_from_Omega",
    "d_op",
    "calD_op",
    "verify_d_lemma",
    "omega_base",
    "Omega_base",
    "omega_step",
    "Omega_step",
    "Omega_step_dw0",
    "d_bridge_holds",
    "poly_orbit_records",
    "poly_text",
]


# ---------------------------------------------------------------------------
# canonical symmetric storage

class _OrbitPoly:
    """Shared internals of the two symmetric polynomial types."""

    __slots__ = ("nvars", "orbits", "_expanded")

    def __init__(self, nvars, orbits):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        clean = {}
        for orbit, coeff in orbits.items():
            orbit = tuple(orbit)
            if len(orbit) != nvars:
                raise ValueError(f"orbit {orbit} does not have {nvars} entries")
            if tuple(sorted(orbit, reverse=True)) != orbit:
                raise ValueError(f"orbit {orbit} is not sorted descending")
            self._check_exponent_lattice(orbit)
            if coeff:
                clean[orbit] = Fraction(coeff)
        self.nvars = nvars
        self.orbits = clean
        self._expanded = None

    @staticmethod
    def _check_exponent_lattice(orbit):
        if any(not isinstance(e, int) for e in orbit):
            raise ValueError(f"exponents must be integers, got {orbit}")

    @classmethod
    def from_expanded(cls, nvars, terms):
        """Group a {full exponent tuple: coeff} dict into orbits, checking
        that the data really is symmetric (orbit complete, coefficients
        constant on each orbit).
        """
        grouped = {}
        for exps, coeff in terms.items():
            if not coeff:
                continue
            grouped.setdefault(tuple(sorted(exps, reverse=True)), []).append(coeff)
        orbits = {}
        for orbit, coeffs in grouped.items():
            if len(coeffs) != orbit_size(orbit) or any(c != coeffs[0] for c in coeffs):
                raise ValueError(f"terms are not symmetric on orbit {orbit}")
            orbits[orbit] = coeffs[0]
        return cls(nvars, orbits)

    def expand(self):
        """Full {exponent tuple: coeff} dict (cached; treat as read-only)."""
        if self._expanded is None:
            out = {}
            for orbit, coeff in self.orbits.items():
                for perm in multiset_permutations(orbit):
                    out[perm] = coeff
            self._expanded = out
        return self._expanded

    def sorted_orbits(self):
        return sorted(self.orbits.items(), key=lambda kv: kv[0], reverse=True)

    def homogeneous_degree(self):
        degrees = {sum(orbit) for orbit in self.orbits}
        if len(degrees) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop() if degrees else None

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.nvars == other.nvars
            and self.orbits == other.orbits
        )

    def __hash__(self):
        return hash((type(self).__name__, self.nvars, frozenset(self.orbits.items())))

    def __bool__(self):
        return bool(self.orbits)

    def __repr__(self):
        return f"{type(self).__name__}({self.nvars}, {dict(self.sorted_orbits())!r})"


class SparseSymPoly(_OrbitPoly):
    """Symmetric polynomial with non-negative integer exponents."""

    @staticmethod
    def _check_exponent_lattice(orbit):
        if any(not isinstance(e, int) or e < 0 for e in orbit):
            raise ValueError(f"exponents must be non-negative integers, got {orbit}")


class HalfPowerPoly(_OrbitPoly):
    """Symmetric polynomial with exponents in (1/2) + Z>=0, stored as odd
    positive integer half-steps (w^(5/2) is half-step 5)."""

    @staticmethod
    def _check_exponent_lattice(orbit):
        if any(not isinstance(e, int) or e < 1 or e % 2 == 0 for e in orbit):
            raise ValueError(f"half-steps must be odd positive integers, got {orbit}")


# ---------------------------------------------------------------------------
# builders from the correlator table

def _cell_orbits(g, n):
    return bounded_partitions(3 * g - 3 + n, n)


def _require_stable(g, n):
    if g < 0 or n < 1 or not is_stable(g, n):
        raise ValueError(f"unstable (g, n) = ({g}, {n})")


def omega_from_correlators(g: int, n: int, table: CorrelatorTable) -> SparseSymPoly:
    """omega_{g,n}: orbit (a_i + 1) carries <tau_a>_g prod (2a_i+1)!!."""
    _require_stable(g, n)
    orbits = {}
    for a in _cell_orbits(g, n):
        value = table.correlator(g, a)
        if not value:
            continue
        for ai in a:
            value *= double_factorial(2 * ai + 1)
        orbits[tuple(ai + 1 for ai in a)] = value
    poly = SparseSymPoly(n, orbits)
    assert poly.homogeneous_degree() in (None, 3 * g - 3 + 2 * n)
    return poly


def tW_from_correlators(g: int, n: int, table: CorrelatorTable) -> SparseSymPoly:
    """W_{g,n} in exponent-table form: orbit (a_i) carries the coefficient
    of prod 1/z_i^(2a_i+2), i.e. <tau_a>_g prod (2a_i+1)!!."""
    _require_stable(g, n)
    orbits = {}
    for a in _cell_orbits(g, n):
        value = table.correlator(g, a)
        if not value:
            continue
        for ai in a:
            value *= double_factorial(2 * ai + 1)
        orbits[a] = value
    return SparseSymPoly(n, orbits)


def Omega_from_correlators(g: int, n: int, table: CorrelatorTable) -> HalfPowerPoly:
    """Omega_{g,n}: orbit half-steps (2a_i + 1) carry <tau_a>_g prod (2a_i-1)!!."""
    _require_stable(g, n)
    orbits = {}
    for a in _cell_orbits(g, n):
        value = table.correlator(g, a)
        if not value:
            continue
        for ai in a:
            value *= double_factorial(2 * ai - 1)
        orbits[tuple(2 * ai + 1 for ai in a)] = value
    poly = HalfPowerPoly(n, orbits)
    assert poly.homogeneous_degree() in (None, 6 * g - 6 + 3 * n)
    return poly


def omega_from_Omega(g: int, n: int, Om: HalfPowerPoly) -> SparseSymPoly:
    """Recover omega_{g,n} = 2^n prod w_j^(3/2) d_{w_1} ... d_{w_n} Omega_{g,n}.

    On a monomial prod w^(k_j/2) the right side is prod k_j w^((k_j+1)/2),
    and (2a-1)!! (2a+1) = (2a+1)!! restores the omega weights.
    """
    terms = {}
    for vec, coeff in Om.expand().items():
        c = coeff
        for k in vec:
            c *= k
        terms[tuple((k + 1) // 2 for k in vec)] = c
    return SparseSymPoly.from_expanded(n, terms)


# ---------------------------------------------------------------------------
# transfer operators

def d_op(f: dict) -> dict:
    """Linear extension of D_{u,v} x^m = uv sum_{j=0..m} (2j+1) u^(m-j) v^j.

    `f` maps non-negative integer exponents to coefficients; the result
    maps (u, v) exponent pairs to coefficients and is divisible by uv.
    """
    out = {}
    for m, coeff in f.items():
        if not isinstance(m, int) or m < 0:
            raise ValueError(f"exponent {m!r} not a non-negative integer")
        if not coeff:
            continue
        for j in range(m + 1):
            key = (m - j + 1, j + 1)
            c = out.get(key, ZERO) + (2 * j + 1) * coeff
            if c:
                out[key] = c
            else:
                out.pop(key, None)
    return out


def calD_op(f: dict) -> dict:
    """Linear extension of calD_{u,v} x^(a-1/2) = u v^(1/2) sum_{t=0..a+1}
    u^(a+1-t) v^t.

    Input exponents are half-steps 2a - 1 (a >= 0); output keys are
    (u half-step, v half-step) pairs, u even and v odd.
    """
    out = {}
    for h, coeff in f.items():
        if not isinstance(h, int) or h < -1 or h % 2 == 0:
            raise ValueError(f"half-step {h!r} not of the form 2a - 1 with a >= 0")
        if not coeff:
            continue
        a = (h + 1) // 2
        for t in range(a + 2):
            key = (2 * (a + 2 - t), 2 * t + 1)
            c = out.get(key, ZERO) + coeff
            if c:
                out[key] = c
            else:
                out.pop(key, None)
    return out


def verify_d_lemma(m: int) -> bool:
    """Check, as exact polynomials in (u, v), the closed form of D_{u,v}x^m.

    Clearing (u-v)^2 from the rational-function definition gives

        u(u+v) u^m - 3v(u-v) v^m - 2v^2 v^m - 2m v^(m+1) (u-v)
            = (u-v)^2 sum_{j=0..m} (2j+1) u^(m-j) v^j.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    lhs = {}

    def add(d, key, c):
        c += d.get(key, ZERO)
        if c:
            d[key] = c
        else:
            d.pop(key, None)

    add(lhs, (m + 2, 0), Fraction(1))
    add(lhs, (m + 1, 1), Fraction(1))
    add(lhs, (1, m + 1), Fraction(-3))
    add(lhs, (0, m + 2), Fraction(3))
    add(lhs, (0, m + 2), Fraction(-2))
    add(lhs, (1, m + 1), Fraction(-2 * m))
    add(lhs, (0, m + 2), Fraction(2 * m))

    rhs = {}
    square = {(2, 0): Fraction(1), (1, 1): Fraction(-2), (0, 2): Fraction(1)}
    for j in range(m + 1):
        for (su, sv), sc in square.items():
            add(rhs, (m - j + su, j + sv), (2 * j + 1) * sc)
    return lhs == rhs


# ---------------------------------------------------------------------------
# plain multivariate helpers (internal; exponent tuples of fixed length)

def _acc(d, exps, coeff):
    c = d.get(exps, ZERO) + coeff
    if c:
        d[exps] = c
    else:
        d.pop(exps, None)


def _mul(d1, d2):
    out = {}
    for e1, c1 in d1.items():
        for e2, c2 in d2.items():
            _acc(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
    return out


def _embed(cell, positions, nvars, slot0_to=0):
    """Place an expanded symmetric cell into an nvars-wide exponent lattice:
    slot 0 goes to variable `slot0_to`, remaining slots to `positions`."""
    out = {}
    for vec, coeff in cell.expand().items():
        exps = [0] * nvars
        exps[slot0_to] = vec[0]
        for pos, e in zip(positions, vec[1:]):
            exps[pos] = e
        _acc(out, tuple(exps), coeff)
    return out


# ---------------------------------------------------------------------------
# seeded bases and one-step recursions

def omega_base(g: int, n: int) -> SparseSymPoly:
    if (g, n) == (0, 3):
        return SparseSymPoly(3, {(1, 1, 1): Fraction(1)})
    if (g, n) == (1, 1):
        return SparseSymPoly(1, {(2,): Fraction(1, 8)})
    raise ValueError(f"({g}, {n}) is not a seeded base cell")


def Omega_base(g: int, n: int) -> HalfPowerPoly:
    if (g, n) == (0, 3):
        return HalfPowerPoly(3, {(1, 1, 1): Fraction(1)})
    if (g, n) == (1, 1):
        return HalfPowerPoly(1, {(3,): Fraction(1, 24)})
    raise ValueError(f"({g}, {n}) is not a seeded base cell")


def _check_step_target(g, n1):
    _require_stable(g, n1)
    if (g, n1) in ((0, 3), (1, 1)):
        raise ValueError(f"({g}, {n1}) is a seeded base cell, not a recursion target")


def _lower_cell(lower, g, n):
    try:
        return lower[(g, n)]
    except KeyError:
        raise ValueError(f"missing lower cell ({g}, {n})") from None


def omega_step(g: int, n: int, lower: dict) -> SparseSymPoly:
    """One recursion step: build omega_{g,n+1}(w_0, ..., w_n) from lower
    cells,

        omega_{g,n+1} = 1/2 w_0 omega_{g-1,n+2}(w_0, w_0, w_[n])
            + 1/2 w_0 sum over stable ordered splits
                  omega_{g_1}(w_0, w_{A_1}) omega_{g_2}(w_0, w_{A_2})
            + sum_i D_{w_0, w_i} omega_{g,n}(x, w_ode) with slot i removed.

    Symmetry of the total in all n+1 variables is asserted, not imposed.
    """
    nvars = n + 1
    _check_step_target(g, nvars)
    acc = {}

    if g >= 1:
        cell = _lower_cell(lower, g - 1, n + 2)
        for vec, coeff in cell.expand().items():
            exps = (vec[0] + vec[1] + 1,) + vec[2:]
            _acc(acc, exps, HALF * coeff)

    positions = list(range(1, nvars))
    for g1 in range(g + 1):
        g2 = g - g1
        for mask in range(1 << n):
            A1 = [positions[i] for i in range(n) if mask >> i & 1]
            A2 = [positions[i] for i in range(n) if not mask >> i & 1]
            if not (is_stable(g1, len(A1) + 1) and is_stable(g2, len(A2) + 1)):
                continue
            d1 = _embed(_lower_cell(lower, g1, len(A1) + 1), A1, nvars)
            d2 = _embed(_lower_cell(lower, g2, len(A2) + 1), A2, nvars)
            for exps, coeff in _mul(d1, d2).items():
                _acc(acc, (exps[0] + 1,) + exps[1:], HALF * coeff)

    if n >= 1:
        cell = _lower_cell(lower, g, n)
        for i in range(1, nvars):
            spectators = [p for p in positions if p != i]
            for vec, coeff in cell.expand().items():
                m = vec[0]
                base = [0] * nvars
                for pos, e in zip(spectators, vec[1:]):
                    base[pos] = e
                for t in range(m + 1):
                    exps = list(base)
                    exps[0] = m - t + 1
                    exps[i] = t + 1
                    _acc(acc, tuple(exps), (2 * t + 1) * coeff)

    return SparseSymPoly.from_expanded(nvars, acc)


def Omega_step_dw0(g: int, n: int, lower: dict) -> dict:
    """The w_0 derivative of Omega_{g,n+1} as a plain half-step dict,

        d_{w_0} Omega_{g,n+1} = w_0^(5/2) d_x d_y Omega_{g-1,n+2}|_{x=y=w_0}
            + w_0^(5/2) sum over stable ordered splits d Omega d Omega
            + w_0^(-3/2) sum_i calD_{w_0,w_i} d_x Omega_{g,n}(x, ...).

    Keys are (n+1)-tuples of half-steps; entry 0 need not lie on the Omega
    lattice until the antiderivative is taken.
    """
    nvars = n + 1
    _check_step_target(g, nvars)
    acc = {}

    if g >= 1:
        cell = _lower_cell(lower, g - 1, n + 2)
        for vec, coeff in cell.expand().items():
            c = coeff * vec[0] * vec[1] / 4
            _acc(acc, (vec[0] + vec[1] + 1,) + vec[2:], c)

    positions = list(range(1, nvars))
    for g1 in range(g + 1):
        g2 = g - g1
        for mask in range(1 << n):
            A1 = [positions[i] for i in range(n) if mask >> i & 1]
            A2 = [positions[i] for i in range(n) if not mask >> i & 1]
            if not (is_stable(g1, len(A1) + 1) and is_stable(g2, len(A2) + 1)):
                continue
            d1 = {
                (exps[0] - 2,) + exps[1:]: coeff * exps[0] / 2
                for exps, coeff in _embed(_lower_cell(lower, g1, len(A1) + 1), A1, nvars).items()
            }
            d2 = {
                (exps[0] - 2,) + exps[1:]: coeff * exps[0] / 2
                for exps, coeff in _embed(_lower_cell(lower, g2, len(A2) + 1), A2, nvars).items()
            }
            for exps, coeff in _mul(d1, d2).items():
                _acc(acc, (exps[0] + 5,) + exps[1:], coeff)

    if n >= 1:
        cell = _lower_cell(lower, g, n)
        for i in range(1, nvars):
            spectators = [p for p in positions if p != i]
            for vec, coeff in cell.expand().items():
                a = (vec[0] - 1) // 2
                c = coeff * vec[0] / 2
                base = [0] * nvars
                for pos, e in zip(spectators, vec[1:]):
                    base[pos] = e
                for t in range(a + 2):
                    exps = list(base)
                    exps[0] = 2 * (a + 2 - t) - 3
                    exps[i] = 2 * t + 1
                    _acc(acc, tuple(exps), c)

    return acc


def Omega_step(g: int, n: int, lower: dict) -> HalfPowerPoly:
    """Antidifferentiate :func:`Omega_step_dw0` in w_0 with zero constant
    term; the result must land on the Omega exponent lattice."""
    nvars = n + 1
    terms = {}
    for exps, coeff in Omega_step_dw0(g, n, lower).items():
        k = exps[0]
        if k == -2:
            raise ValueError(f"term {exps} would antidifferentiate to a logarithm")
        _acc(terms, (k + 2,) + exps[1:], coeff * Fraction(2, k + 2))
    return HalfPowerPoly.from_expanded(nvars, terms)


# ---------------------------------------------------------------------------
# compatibility of the two transfer operators

def d_bridge_holds(g: int, n: int, i: int, table: CorrelatorTable) -> bool:
    """Check that the two encodings of the transfer term agree:

        D_{w_0,w_i} omega_{g,n}(x, w)  ==
        2^(n+1) prod_j w_j^(3/2) d_{w_1} ... d_{w_n} calD_{w_0,w_i}
            d_x Omega_{g,n}(x, w)

    as exact polynomials in w_0, ..., w_n (variable i of the cell is the
    one routed through the operator).
    """
    if not 1 <= i <= n:
        raise ValueError(f"variable index {i} out of range 1..{n}")
    nvars = n + 1
    spectators = [p for p in range(1, nvars) if p != i]

    lhs = {}
    for vec, coeff in omega_from_correlators(g, n, table).expand().items():
        m = vec[0]
        base = [0] * nvars
        for pos, e in zip(spectators, vec[1:]):
            base[pos] = e
        for t in range(m + 1):
            exps = list(base)
            exps[0] = m - t + 1
            exps[i] = t + 1
            _acc(lhs, tuple(exps), (2 * t + 1) * coeff)

    rhs = {}
    for vec, coeff in Omega_from_correlators(g, n, table).expand().items():
        a = (vec[0] - 1) // 2
        c = coeff * vec[0] / 2
        base = [0] * nvars
        for pos, e in zip(spectators, vec[1:]):
            base[pos] = e
        for t in range(a + 2):
            exps = list(base)
            exps[0] = 2 * (a + 2 - t)
            exps[i] = 2 * t + 1
            _acc(rhs, tuple(exps), c)
    bridged = {}
    for exps, coeff in rhs.items():
        c = coeff * (2 ** (n + 1))
        out = [exps[0]]
        for h in exps[1:]:
            c *= Fraction(h, 2)
            out.append(h + 1)
        assert all(e % 2 == 0 for e in out)
        _acc(bridged, tuple(e // 2 for e in out), c)

    return lhs == bridged


# ---------------------------------------------------------------------------
# rendering and export

def _halfstep_str(h: int) -> str:
    return f"{h}/2"


def poly_orbit_records(poly, kind: str) -> list:
    """Orbit records for JSON export, sorted by orbit descending."""
    records = []
    for orbit, coeff in poly.sorted_orbits():
        if kind == "Omega":
            exported = [_halfstep_str(h) for h in orbit]
        else:
            exported = list(orbit)
        records.append({"orbit": exported, "coeff": rat_str(coeff)})
    return records


def poly_text(poly, kind: str) -> str:
    """Canonical one-line-per-orbit text rendering.

    W cells print in the 1/z^(2a+2) notation, omega cells as monomials in
    w_i, Omega cells with explicit half-integer exponents.
    """
    lines = []
    for orbit, coeff in poly.sorted_orbits():
        if kind == "W":
            mono = " ".join(f"z{i + 1}^{2 * a + 2}" for i, a in enumerate(orbit))
            lines.append(f"{rat_str(coeff)} / ({mono})")
        elif kind == "omega":
            factors = []
            for i, e in enumerate(orbit):
                if e == 0:
                    continue
                factors.append(f"w{i + 1}" + (f"^{e}" if e > 1 else ""))
            lines.append(f"{rat_str(coeff)} * " + " ".join(factors))
        elif kind == "Omega":
            mono = " ".join(f"w{i + 1}^({_halfstep_str(h)})" for i, h in enumerate(orbit))
            lines.append(f"{rat_str(coeff)} * {mono}")
        else:
            raise ValueError(f"unknown kind {kind!r}")
    if not lines:
        return "0"
    return "\n".join(lines)
