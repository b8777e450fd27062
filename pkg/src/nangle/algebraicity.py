"""The computable non-algebraicity obstruction.

If d*1_R = u*p is a nonzero element of m, the chain (R/d)• realized as the
constant rank-one chain with all maps p carries the self-map (u*p, ..., u*p);
a null-homotopy of it amounts to scalars q_1, ..., q_{n-3} with

    u*p = p*q_1 = q_1*p + p*q_2 = ... = q_{n-4}*p + p*q_{n-3} = q_{n-3}*p.

Algebraic n-angulated structure forces such a null-homotopy to exist; for odd
n with 2p = 0 summing the equations gives (n-2)*u*p = u*p = 0, a
contradiction, so unsolvability certifies non-algebraicity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import RMatrix, UnsolvableCertificate, solve_linear_explained
from .rings import Ring


@dataclass(frozen=True)
class QuotientComplex:
    """The constant rank-one chain standing for (R/d)• up to a contractible
    summand: terms (R/d)_1 ... (R/d)_{n-2}, all differentials p, self-map
    components all u*p where d*1_R = u*p."""

    ring: Ring
    d: int
    n: int
    u: int  # canonical unit with d*1_R = u*p

    @property
    def num_terms(self) -> int:
        return self.n - 2

    def differentials(self) -> list[RMatrix]:
        ring = self.ring
        return [RMatrix(ring, 1, 1, [ring.p]) for _ in range(self.n - 3)]

    def self_map_components(self) -> list[RMatrix]:
        ring = self.ring
        up = ring.mul(self.u, ring.p)
        return [RMatrix(ring, 1, 1, [up]) for _ in range(self.n - 2)]


def quotient_complex(ring: Ring, n: int, d: int) -> QuotientComplex:
    if n < 3:
        raise ValueError("n must be >= 3")
    u = _unit_part_of_d(ring, d)
    if u is None:
        raise ValueError(f"d = {d} does not satisfy d*1 in m\\{{0}} over {ring.spec}")
    return QuotientComplex(ring=ring, d=d, n=n, u=u)


def _d_times_one(ring: Ring, d: int) -> int:
    out = 0
    step = 1 if d >= 0 else ring.neg(1)
    for _ in range(abs(d)):
        out = ring.add(out, step)
    return out


def _unit_part_of_d(ring: Ring, d: int) -> int | None:
    x = _d_times_one(ring, d)
    kind, data = ring.classify(x)
    return data if kind == "unit_times_p" else None


def find_obstruction_d(ring: Ring) -> int | None:
    """Smallest positive d with d*1_R in m \\ {0}.  d*1_R is periodic in d
    with period dividing the additive order of 1, so the search is bounded."""
    x = 0
    for d in range(1, ring.order + 1):
        x = ring.add(x, 1)
        if x != 0 and not ring.is_unit(x):
            return d
        if x == 0:
            return None  # additive order of 1 reached without hitting m\{0}
    return None


@dataclass(frozen=True)
class ObstructionSystem:
    """The scalar system in q_1..q_{n-3}, kept for certificates."""

    matrix: RMatrix
    rhs: RMatrix


def _build_system(ring: Ring, n: int, u: int) -> ObstructionSystem:
    up = ring.mul(u, ring.p)
    unknowns = n - 3
    eqs = n - 2
    data = [0] * (eqs * unknowns)
    # eq 0: p*q_1; eq i (1..n-4): q_i*p + p*q_{i+1}; eq n-3: q_{n-3}*p
    for e in range(eqs):
        if e < unknowns:
            data[e * unknowns + e] = ring.p
        if 0 < e:
            data[e * unknowns + (e - 1)] = ring.add(data[e * unknowns + (e - 1)], ring.p)
    a = RMatrix(ring, eqs, unknowns, data)
    b = RMatrix(ring, eqs, 1, [up] * eqs)
    return ObstructionSystem(matrix=a, rhs=b)


def null_homotopy_d(ring: Ring, n: int, d: int) -> tuple[int, ...] | None:
    """A verified witness (q_1, ..., q_{n-3}) or None.

    For n = 3 there are no unknowns and the single condition degenerates to
    u*p = 0, which the precondition d*1 = u*p != 0 rules out.
    """
    qc = quotient_complex(ring, n, d)
    sys = _build_system(ring, n, qc.u)
    res = solve_linear_explained(sys.matrix, sys.rhs)
    if isinstance(res, UnsolvableCertificate):
        return None
    witness = tuple(res.x0.entry(i, 0) for i in range(n - 3))
    _verify_witness(ring, n, qc.u, witness)
    return witness


def _verify_witness(ring: Ring, n: int, u: int, witness: tuple[int, ...]) -> None:
    up = ring.mul(u, ring.p)
    if len(witness) != n - 3:
        raise ValueError("witness has wrong length")
    if n == 3:
        if up != 0:
            raise AssertionError("empty witness needs u*p = 0")
        return
    vals = []
    vals.append(ring.mul(ring.p, witness[0]))
    for i in range(n - 4):
        vals.append(ring.add(ring.mul(witness[i], ring.p), ring.mul(ring.p, witness[i + 1])))
    vals.append(ring.mul(witness[-1], ring.p))
    if any(v != up for v in vals):
        raise AssertionError("null-homotopy witness fails the chain equations")


def alternating_witness(ring: Ring, n: int, u: int) -> tuple[int, ...]:
    """The explicit even-n witness (u, 0, u, ..., 0, u) of length n-3."""
    if n < 4 or n % 2 != 0:
        raise ValueError("the alternating witness exists for even n >= 4")
    out = []
    for i in range(n - 3):
        out.append(u if i % 2 == 0 else 0)
    return tuple(out)


@dataclass(frozen=True)
class ObstructionReport:
    """verdict 'not_algebraic' carries the unsolvability certificate;
    'inconclusive' carries either a verified null-homotopy witness or the
    reason ('no-valid-d' or 'parity')."""

    verdict: str  # "not_algebraic" | "inconclusive"
    d: int | None = None
    witness: tuple[int, ...] | None = None
    reason: str | None = None
    certificate: UnsolvableCertificate | None = None


def algebraicity_verdict(ring: Ring, n: int) -> ObstructionReport:
    """Decide the obstruction for (ring, n).

    NotAlgebraic only for odd n with 2p = 0 and a valid d, where the scalar
    system is certified unsolvable.  Even n gets the verified alternating
    witness; no valid d or odd n with 2p != 0 (the collections N_u are not
    angulations there) are inconclusive.  'Algebraic' is never reported.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    d = find_obstruction_d(ring)
    if d is None:
        return ObstructionReport(verdict="inconclusive", reason="no-valid-d")
    u = _unit_part_of_d(ring, d)
    assert u is not None
    if n % 2 == 0:
        w = alternating_witness(ring, n, u)
        _verify_witness(ring, n, u, w)
        return ObstructionReport(verdict="inconclusive", d=d, witness=w, reason="even-n-witness")
    if not ring.two_p_zero:
        return ObstructionReport(verdict="inconclusive", d=d, reason="parity")
    sys = _build_system(ring, n, u)
    res = solve_linear_explained(sys.matrix, sys.rhs)
    if isinstance(res, UnsolvableCertificate):
        return ObstructionReport(verdict="not_algebraic", d=d, certificate=res)
    # guaranteed impossible for odd n with 2p = 0; reaching here is a bug
    raise AssertionError("obstruction system solvable for odd n with 2p = 0")
