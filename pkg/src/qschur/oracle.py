"""Independent ground truth: the tensor-power matrix representation.

The two-dimensional natural module has basis vectors indexed by bits
(bit 0 and bit 1); the degree-d tensor power is indexed by bit-strings of
length d, encoded as integers with the leftmost slot most significant.  The
generator images are built from the explicit 2x2 matrices by iterating the
comultiplication, which distributes group-like legs K1*K2^-1 (or its
inverse) over the tensor slots.  Everything downstream of the symbolic
algebra is checked against these matrices with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .algebra import EKF, ContextMismatch, Element
from .laurent import LaurentPoly, gauss_binomial, quantum_int

DEFAULT_MAX_D = 10
CONVENTIONS = ("standard", "mirrored", "broken")


class DimensionLimit(ValueError):
    """Requested tensor degree exceeds the configured maximum."""


class CoproductCheckFailed(RuntimeError):
    """No comultiplication convention produced a valid representation."""


class LaurentMatrix:
    """A sparse square matrix with Laurent polynomial entries."""

    __slots__ = ("dim", "entries")

    def __init__(
        self,
        dim: int,
        entries: dict[tuple[int, int], LaurentPoly] | Iterable = (),
    ):
        self.dim = dim
        items = entries.items() if isinstance(entries, dict) else entries
        acc: dict[tuple[int, int], LaurentPoly] = {}
        for (r, c), val in items:
            if not (0 <= r < dim and 0 <= c < dim):
                raise IndexError(f"entry ({r},{c}) outside a {dim}x{dim} matrix")
            val = LaurentPoly.coerce(val)
            if not val.is_zero:
                acc[(r, c)] = val
        self.entries = acc

    @staticmethod
    def identity(dim: int) -> LaurentMatrix:
        one = LaurentPoly.one()
        return LaurentMatrix(dim, {(i, i): one for i in range(dim)})

    @staticmethod
    def diagonal(values: list[LaurentPoly]) -> LaurentMatrix:
        return LaurentMatrix(len(values), {(i, i): x for i, x in enumerate(values)})

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        entries = dict(self.entries)
        for k, val in other.entries.items():
            n = entries.get(k)
            n = val if n is None else n + val
            if n.is_zero:
                entries.pop(k, None)
            else:
                entries[k] = n
        out = LaurentMatrix.__new__(LaurentMatrix)
        out.dim = self.dim
        out.entries = entries
        return out

    def __neg__(self) -> LaurentMatrix:
        out = LaurentMatrix.__new__(LaurentMatrix)
        out.dim = self.dim
        out.entries = {k: -v for k, v in self.entries.items()}
        return out

    def __sub__(self, other: LaurentMatrix) -> LaurentMatrix:
        return self + (-other)

    def scale(self, scalar: int | LaurentPoly) -> LaurentMatrix:
        scalar = LaurentPoly.coerce(scalar)
        return LaurentMatrix(
            self.dim, {k: v * scalar for k, v in self.entries.items()}
        )

    def __mul__(self, other: LaurentMatrix) -> LaurentMatrix:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        rows: dict[int, dict[int, LaurentPoly]] = {}
        for (r, c), val in other.entries.items():
            rows.setdefault(r, {})[c] = val
        acc: dict[tuple[int, int], LaurentPoly] = {}
        for (r, k), a in self.entries.items():
            row = rows.get(k)
            if not row:
                continue
            for c, b in row.items():
                key = (r, c)
                n = acc.get(key)
                p = a * b
                n = p if n is None else n + p
                if n.is_zero:
                    acc.pop(key, None)
                else:
                    acc[key] = n
        out = LaurentMatrix.__new__(LaurentMatrix)
        out.dim = self.dim
        out.entries = acc
        return out

    def power(self, n: int) -> LaurentMatrix:
        result = LaurentMatrix.identity(self.dim)
        for _ in range(n):
            result = result * self
        return result

    def exact_div_scalar(self, scalar: LaurentPoly) -> LaurentMatrix:
        return LaurentMatrix(
            self.dim, {k: v.exact_div(scalar) for k, v in self.entries.items()}
        )

    def transpose(self) -> LaurentMatrix:
        return LaurentMatrix(self.dim, {(c, r): v for (r, c), v in self.entries.items()})

    def diagonal_exponents(self) -> list[int]:
        """Exponents m with entry v^m on the diagonal; requires the matrix
        to be diagonal with unit monomial entries."""
        out = []
        for i in range(self.dim):
            val = self.entries.get((i, i), LaurentPoly.zero())
            if len(val) != 1 or val.coefficient(val.degree()) != 1:
                raise ValueError("matrix is not diagonal with monomial entries")
            out.append(val.degree())
        if len(self.entries) != self.dim:
            raise ValueError("matrix has off-diagonal entries")
        return out

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [[r, c, v.to_json()] for (r, c), v in sorted(self.entries.items())],
        }

    @staticmethod
    def from_json(data: dict) -> LaurentMatrix:
        return LaurentMatrix(
            data["dim"],
            {(r, c): LaurentPoly.from_json(v) for r, c, v in data["entries"]},
        )


@dataclass
class OracleRep:
    """Exact generator matrices on the degree-d tensor power.

    Immutable after construction apart from the divided-power cache, whose
    entries are pure functions of (gen, m); a concurrent duplicate fill is
    benign.
    """

    d: int
    e: LaurentMatrix
    f: LaurentMatrix
    k1: LaurentMatrix
    k1_inv: LaurentMatrix
    k2: LaurentMatrix
    k2_inv: LaurentMatrix
    convention: str = "standard"
    _dp_cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return 1 << self.d

    def generator(self, name: str) -> LaurentMatrix:
        return {
            "e": self.e,
            "f": self.f,
            "K1": self.k1,
            "K1inv": self.k1_inv,
            "K2": self.k2,
            "K2inv": self.k2_inv,
        }[name]


def _slot_bits(n: int, d: int) -> list[int]:
    return [(n >> (d - 1 - j)) & 1 for j in range(d)]


def _build_generator_matrices(d: int, convention: str):
    dim = 1 << d
    e_entries: dict[tuple[int, int], LaurentPoly] = {}
    f_entries: dict[tuple[int, int], LaurentPoly] = {}
    k1_exps: list[int] = []
    k2_exps: list[int] = []
    for src in range(dim):
        bits = _slot_bits(src, d)
        ones = sum(bits)
        zeros = d - ones
        k1_exps.append(zeros)
        k2_exps.append(ones)
        for j, bit in enumerate(bits):
            mask = 1 << (d - 1 - j)
            if bit == 1:
                # e clears the bit; group-like legs contribute +-1 per slot.
                if convention == "standard":
                    w = sum(1 if b == 0 else -1 for b in bits[:j])
                elif convention == "mirrored":
                    w = sum(-1 if b == 0 else 1 for b in bits[j + 1 :])
                else:  # deliberately wrong leg placement, for negative controls
                    w = sum(-1 if b == 0 else 1 for b in bits[:j])
                key = (src & ~mask, src)
                e_entries[key] = e_entries.get(key, LaurentPoly.zero()) + LaurentPoly.v(w)
            else:
                # f sets the bit.
                if convention == "standard":
                    w = sum(1 if b == 1 else -1 for b in bits[j + 1 :])
                elif convention == "mirrored":
                    w = sum(-1 if b == 1 else 1 for b in bits[:j])
                else:
                    w = sum(1 if b == 1 else -1 for b in bits[j + 1 :])
                key = (src | mask, src)
                f_entries[key] = f_entries.get(key, LaurentPoly.zero()) + LaurentPoly.v(w)
    return (
        LaurentMatrix(dim, e_entries),
        LaurentMatrix(dim, f_entries),
        LaurentMatrix.diagonal([LaurentPoly.v(z) for z in k1_exps]),
        LaurentMatrix.diagonal([LaurentPoly.v(-z) for z in k1_exps]),
        LaurentMatrix.diagonal([LaurentPoly.v(o) for o in k2_exps]),
        LaurentMatrix.diagonal([LaurentPoly.v(-o) for o in k2_exps]),
    )


def build_rep(
    d: int,
    *,
    max_d: int = DEFAULT_MAX_D,
    convention: str | None = None,
    self_check: bool = True,
) -> OracleRep:
    """Construct the representation, self-checking the defining relations.

    With ``convention=None`` the standard comultiplication is tried first
    and the mirrored one is used as a fallback; if both fail the build
    aborts rather than returning a silently wrong oracle.
    """
    if d < 0:
        raise ValueError("tensor degree must be nonnegative")
    if d > max_d:
        raise DimensionLimit(f"tensor degree {d} exceeds the configured maximum {max_d}")
    candidates = [convention] if convention is not None else ["standard", "mirrored"]
    failures = []
    for name in candidates:
        if name not in CONVENTIONS:
            raise ValueError(f"unknown convention {name!r}")
        rep = OracleRep(d, *_build_generator_matrices(d, name), convention=name)
        if not self_check:
            return rep
        report = verify_defining_relations(rep)
        if report["pass"]:
            return rep
        failures.append((name, [c for c in report["checks"] if not c["pass"]]))
    raise CoproductCheckFailed(f"no convention satisfied the defining relations: {failures}")


def matrix_of_divided_power(rep: OracleRep, gen: str, m: int) -> LaurentMatrix:
    """The matrix of e^(m) or f^(m): the m-th power divided by [m]!."""
    if gen not in ("e", "f"):
        raise ValueError(f"generator must be 'e' or 'f', got {gen!r}")
    if m < 0:
        raise ValueError("divided-power exponent must be nonnegative")
    key = (gen, m)
    cached = rep._dp_cache.get(key)
    if cached is not None:
        return cached
    if m == 0:
        result = LaurentMatrix.identity(rep.dim)
    else:
        # X^(m) = X^(m-1) * X / [m]
        base = rep.e if gen == "e" else rep.f
        result = (matrix_of_divided_power(rep, gen, m - 1) * base).exact_div_scalar(
            quantum_int(m)
        )
    rep._dp_cache[key] = result
    return result


def diagonal_kbinom(matrix: LaurentMatrix, c: int, t: int) -> LaurentMatrix:
    """The K-binomial of an invertible diagonal matrix with entries v^m.

    Entrywise this is the Gaussian binomial [m + c; t].
    """
    exps = matrix.diagonal_exponents()
    return LaurentMatrix.diagonal([gauss_binomial(m + c, t) for m in exps])


def idempotent_projector(rep: OracleRep, b1: int, b2: int) -> LaurentMatrix:
    """The image of K[b1,b2]: a 0/1 diagonal projector onto a weight space."""
    proj = diagonal_kbinom(rep.k1, 0, b1) * diagonal_kbinom(rep.k2, 0, b2)
    for (r, c), val in proj.entries.items():
        assert r == c and val == LaurentPoly.one(), "idempotent image is not a 0/1 projector"
    return proj


def matrix_of_element(rep: OracleRep, x: Element) -> LaurentMatrix:
    """Evaluate a symbolic element to its matrix."""
    if x.ctx.d != rep.d:
        raise ContextMismatch(f"element degree {x.ctx.d} differs from oracle degree {rep.d}")
    total = LaurentMatrix(rep.dim)
    outer, inner = ("e", "f") if x.orientation == EKF else ("f", "e")
    for m, coeff in x.terms.items():
        word = (
            matrix_of_divided_power(rep, outer, m.a)
            * idempotent_projector(rep, m.b1, m.b2)
            * matrix_of_divided_power(rep, inner, m.c)
        )
        total = total + word.scale(coeff)
    return total


def oracle_equal(rep: OracleRep, x: Element, y: Element) -> bool:
    """Entrywise equality of the two elements' matrices."""
    return matrix_of_element(rep, x) == matrix_of_element(rep, y)


# ---------------------------------------------------------------------------
# Exact rank
# ---------------------------------------------------------------------------


def span_rank(matrices: list[LaurentMatrix]) -> int:
    """The rank over Q(v) of a set of matrices, each flattened to a vector.

    Certification is fully symbolic: rows with disjoint column support are
    split into independent groups and each group is reduced by one-step
    fraction-free elimination, whose divisions are exact in Z[v, v^-1].
    """
    rows = [dict(m.entries) for m in matrices if m.entries]
    if not rows:
        return 0
    # Group rows that share any column (union-find keyed through columns).
    parent = list(range(len(rows)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    col_owner: dict[tuple[int, int], int] = {}
    for i, row in enumerate(rows):
        for col in row:
            j = col_owner.setdefault(col, i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups: dict[int, list[dict]] = {}
    for i, row in enumerate(rows):
        groups.setdefault(find(i), []).append(row)
    return sum(_fraction_free_rank(g) for g in groups.values())


def _fraction_free_rank(rows: list[dict[tuple[int, int], LaurentPoly]]) -> int:
    """One-step fraction-free elimination (Bareiss) on sparse rows."""
    active = [dict(r) for r in rows]
    prev_pivot = LaurentPoly.one()
    rank = 0
    while active:
        # Smallest row first, then its simplest entry, keeps fill-in low.
        idx = min(range(len(active)), key=lambda i: len(active[i]))
        pivot_row = active.pop(idx)
        pivot_col, pivot = min(
            pivot_row.items(), key=lambda kv: (len(kv[1]), kv[0])
        )
        rank += 1
        next_active = []
        for row in active:
            mult = row.pop(pivot_col, None)
            new_row: dict[tuple[int, int], LaurentPoly] = {}
            cols = set(row)
            if mult is not None:
                cols |= set(pivot_row)
                cols.discard(pivot_col)
            for col in cols:
                val = pivot * row.get(col, LaurentPoly.zero())
                if mult is not None:
                    val = val - mult * pivot_row.get(col, LaurentPoly.zero())
                val = val.exact_div(prev_pivot)
                if not val.is_zero:
                    new_row[col] = val
            if new_row:
                next_active.append(new_row)
        active = next_active
        prev_pivot = pivot
    return rank


# ---------------------------------------------------------------------------
# Relation and identity verification
# ---------------------------------------------------------------------------


def _check(checks: list, cid: str, lhs: LaurentMatrix, rhs: LaurentMatrix) -> None:
    if lhs == rhs:
        checks.append({"id": cid, "pass": True})
        return
    diff = lhs - rhs
    (r, c), val = sorted(diff.entries.items())[0]
    got = lhs.entries.get((r, c), LaurentPoly.zero())
    want = rhs.entries.get((r, c), LaurentPoly.zero())
    checks.append(
        {
            "id": cid,
            "pass": False,
            "witness": f"entry ({r},{c}): {got} != {want}",
        }
    )


def verify_defining_relations(rep: OracleRep) -> dict:
    """Check the presentation relations as exact matrix identities."""
    checks: list[dict] = []
    ident = LaurentMatrix.identity(rep.dim)
    v = LaurentPoly.v
    e, f, k1, k1i, k2, k2i = rep.e, rep.f, rep.k1, rep.k1_inv, rep.k2, rep.k2_inv

    _check(checks, "k1-k2-commute", k1 * k2, k2 * k1)
    _check(checks, "k1-inverse", k1 * k1i, ident)
    _check(checks, "k2-inverse", k2 * k2i, ident)
    _check(checks, "k1-conj-e", k1 * e * k1i, e.scale(v(1)))
    _check(checks, "k1-conj-f", k1 * f * k1i, f.scale(v(-1)))
    _check(checks, "k2-conj-e", k2 * e * k2i, e.scale(v(-1)))
    _check(checks, "k2-conj-f", k2 * f * k2i, f.scale(v(1)))
    commutator_rhs = (k1 * k2i - k1i * k2).exact_div_scalar(v(1) - v(-1))
    _check(checks, "ef-commutator", e * f - f * e, commutator_rhs)
    _check(checks, "k1k2-central-scalar", k1 * k2, ident.scale(v(rep.d)))
    minpoly = ident
    for i in range(rep.d + 1):
        minpoly = minpoly * (k1 - ident.scale(v(i)))
    _check(checks, "k1-minimal-poly", minpoly, LaurentMatrix(rep.dim))

    return {
        "d": rep.d,
        "suite": "defining-relations",
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def verify_lusztig_identities(rep: OracleRep, bound: int = 4) -> dict:
    """Check the standard divided-power and K-binomial identities, entrywise.

    The identity families cover conjugation by K powers, K-binomials sliding
    past e and f, commutators with divided powers, and the recursion, merge
    and expansion rules for K-binomials.
    """
    checks: list[dict] = []
    v = LaurentPoly.v
    dim = rep.dim
    zero = LaurentMatrix(dim)
    e, f = rep.e, rep.f
    ks = {"K1": (rep.k1, rep.k1_inv), "K2": (rep.k2, rep.k2_inv)}
    kk_inv = rep.k1 * rep.k2_inv  # the sl2-type K, diagonal

    def kpow(name: str, n: int) -> LaurentMatrix:
        base, inv = ks[name]
        return base.power(n) if n >= 0 else inv.power(-n)

    for name in ("K1", "K2"):
        sign = 1 if name == "K1" else -1
        for n in range(-bound, bound + 1):
            _check(
                checks,
                f"conj-e-by-{name.lower()}^{n}",
                kpow(name, n) * e * kpow(name, -n),
                e.scale(v(sign * n)),
            )
            _check(
                checks,
                f"conj-f-by-{name.lower()}^{n}",
                kpow(name, n) * f * kpow(name, -n),
                f.scale(v(-sign * n)),
            )

    for name in ("K1", "K2"):
        base = ks[name][0]
        shift = 1 if name == "K1" else -1
        for c in range(-bound, bound + 1):
            for t in range(bound + 1):
                kb = diagonal_kbinom(base, c, t)
                _check(
                    checks,
                    f"kbinom-shift-{name.lower()}-past-e(c={c},t={t})",
                    kb * e,
                    e * diagonal_kbinom(base, c + shift, t),
                )
                _check(
                    checks,
                    f"kbinom-shift-{name.lower()}-past-f(c={c},t={t})",
                    kb * f,
                    f * diagonal_kbinom(base, c - shift, t),
                )

    for m in range(bound + 1):
        fm = matrix_of_divided_power(rep, "f", m)
        fm1 = matrix_of_divided_power(rep, "f", m - 1) if m >= 1 else zero
        _check(
            checks,
            f"e-past-divided-f(m={m})",
            fm * e,
            e * fm - diagonal_kbinom(kk_inv, m - 1, 1) * fm1,
        )
        em = matrix_of_divided_power(rep, "e", m)
        em1 = matrix_of_divided_power(rep, "e", m - 1) if m >= 1 else zero
        _check(
            checks,
            f"f-past-divided-e(m={m})",
            f * em,
            em * f - em1 * diagonal_kbinom(kk_inv, m - 1, 1),
        )

    for name in ("K1", "K2"):
        base, inv = ks[name]
        for c in range(-bound, bound + 1):
            for t in range(bound):
                _check(
                    checks,
                    f"kbinom-recursion-{name.lower()}(c={c},t={t})",
                    diagonal_kbinom(base, c + 1, t + 1),
                    diagonal_kbinom(base, c, t + 1).scale(v(t + 1))
                    + (inv * diagonal_kbinom(base, c, t)).scale(v(t - c)),
                )
        for t in range(bound + 1):
            for tp in range(bound + 1):
                _check(
                    checks,
                    f"kbinom-merge-{name.lower()}(t={t},t'={tp})",
                    diagonal_kbinom(base, 0, t) * diagonal_kbinom(base, -t, tp),
                    diagonal_kbinom(base, 0, t + tp).scale(gauss_binomial(t + tp, t)),
                )
        for c in range(bound + 1):
            for t in range(bound + 1):
                rhs = LaurentMatrix(dim)
                for j in range(t + 1):
                    term = (inv.power(j) * diagonal_kbinom(base, 0, t - j)).scale(
                        gauss_binomial(c, j) * v(c * (t - j))
                    )
                    rhs = rhs + term
                _check(
                    checks,
                    f"kbinom-expansion-{name.lower()}(c={c},t={t})",
                    diagonal_kbinom(base, c, t),
                    rhs,
                )

    return {
        "d": rep.d,
        "suite": "lusztig",
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
