"""Seeded random generation of members of N_u and morphisms between them.

All randomness is derived from a 64-bit seed and a trial counter through a
splitmix64 step, so independent trials are reproducible and order-independent.
"""

from __future__ import annotations

import random

from .matrices import KMatrix, RMatrix, inverse, kinv, krank, lift, lift_p
from .rings import Ring
from .sequences import NSequence, SeqMorphism, TrivialSpec, apply_iso, direct_sum, standard_angle, trivial_sequence

MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> int:
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_rng(seed: int, counter: int) -> random.Random:
    return random.Random(splitmix64((seed & MASK64) ^ splitmix64(counter)))


def random_matrix(ring: Ring, rows: int, cols: int, rng: random.Random) -> RMatrix:
    return RMatrix(ring, rows, cols, [rng.randrange(ring.order) for _ in range(rows * cols)])


def random_invertible(ring: Ring, size: int, rng: random.Random) -> RMatrix:
    """Residue-invertible square matrix; rejection sampling over k keeps the
    acceptance rate above 1/4 even for q = 2."""
    if size == 0:
        return RMatrix(ring, 0, 0, [])
    while True:
        m = random_matrix(ring, size, size, rng)
        if krank(m.residue()) == size:
            return m


def random_invertibles(ring: Ring, ranks, rng: random.Random) -> list[RMatrix]:
    return [random_invertible(ring, r, rng) for r in ranks]


def random_member(ring: Ring, n: int, u: int, max_rank: int, rng: random.Random) -> NSequence:
    """A random element of N_u: standard core of random rank plus random
    trivials, conjugated by random invertible transforms.  By definition of
    N_u this reaches every member shape."""
    core_rank = rng.randrange(max_rank + 1)
    parts = [standard_angle(ring, n, u, core_rank)]
    for _ in range(rng.randrange(3)):
        parts.append(trivial_sequence(ring, n, TrivialSpec(rank=1 + rng.randrange(2), position=1 + rng.randrange(n))))
    base = direct_sum(*parts)
    return apply_iso(base, random_invertibles(ring, base.ranks, rng))


def _random_k_matrix(ring: Ring, rows: int, cols: int, rng: random.Random) -> KMatrix:
    return KMatrix(ring.k, rows, cols, [rng.randrange(ring.q) for _ in range(rows * cols)])


def _random_core_to_core(src: NSequence, tgt: NSequence, rng: random.Random) -> list[RMatrix]:
    """All morphisms between minimal cores: residues are chained from a free
    ψ_1 (the wrap closes because both residue products are scalar), p-parts
    are free."""
    ring, n = src.ring, src.n
    a_factors = [m.p_part() for m in src.maps]
    b_factors = [m.p_part() for m in tgt.maps]
    res = [_random_k_matrix(ring, tgt.ranks[0], src.ranks[0], rng)]
    for i in range(n - 1):
        res.append(b_factors[i] @ res[i] @ kinv(a_factors[i]))
    comps = []
    for i in range(n):
        theta = _random_k_matrix(ring, tgt.ranks[i], src.ranks[i], rng)
        comps.append(lift(ring, res[i]) + lift_p(ring, theta))
    return comps


def random_morphism(x: NSequence, y: NSequence, u: int, rng: random.Random) -> SeqMorphism:
    """Uniform-ish random morphism between members of N_u.

    Both members are split; a morphism between the decompositions is drawn
    blockwise from the free parametrizations (core-core residue chains with
    free p-parts, free component at the source object of a source trivial,
    free component at the far object of a target trivial), then transported
    back.  Every morphism arises this way.
    """
    from .angulation import _decompose, classify

    ring, n = x.ring, x.n
    cx, cy = classify(x), classify(y)
    if cx.split is None or cy.split is None:
        raise ValueError("both sequences must be candidates in N_u")
    sx, sy = cx.split, cy.split
    src_parts = _decompose(sx, ring, n)
    tgt_parts = _decompose(sy, ring, n)
    dx_ranks = tuple(sum(p.seq.ranks[i] for p in src_parts) for i in range(n))
    dy_ranks = tuple(sum(p.seq.ranks[i] for p in tgt_parts) for i in range(n))
    blocks = [[[0] * dx_ranks[i] for _ in range(dy_ranks[i])] for i in range(n)]

    for s in src_parts:
        for t in tgt_parts:
            if s.seq.total_rank() == 0 or t.seq.total_rank() == 0:
                comps = [RMatrix.zeros(ring, t.seq.ranks[i], s.seq.ranks[i]) for i in range(n)]
            elif s.kind == "trivial":
                js = s.position
                comps = [RMatrix.zeros(ring, t.seq.ranks[i], s.seq.ranks[i]) for i in range(n)]
                j0 = js - 1  # 0-based object carrying the source identity
                eta = random_matrix(ring, t.seq.ranks[j0], s.seq.ranks[j0], rng)
                comps[j0] = eta
                comps[js % n] = t.seq.maps[j0] @ eta
            elif t.kind == "trivial":
                jt = t.position
                comps = [RMatrix.zeros(ring, t.seq.ranks[i], s.seq.ranks[i]) for i in range(n)]
                far = jt % n  # 0-based object jt+1 of the target trivial
                eta = random_matrix(ring, t.seq.ranks[far], s.seq.ranks[far], rng)
                comps[far] = eta
                comps[jt - 1] = eta @ s.seq.maps[jt - 1]
            else:
                comps = _random_core_to_core(s.seq, t.seq, rng)
            for i in range(n):
                for r in range(comps[i].rows):
                    row = comps[i].row(r)
                    for c in range(comps[i].cols):
                        blocks[i][t.offsets[i] + r][s.offsets[i] + c] = row[c]

    g = [
        RMatrix.from_rows(ring, blocks[i]) if dy_ranks[i] else RMatrix(ring, 0, dx_ranks[i], [])
        for i in range(n)
    ]
    psix_inv = [inverse(m) for m in sx.iso]
    psiy_inv = [inverse(m) for m in sy.iso]
    phis = tuple(psiy_inv[i] @ g[i] @ sx.iso[i] for i in range(n))
    return SeqMorphism(x, y, phis)


def random_commuting_square(x: NSequence, y: NSequence, u: int, rng: random.Random) -> tuple[RMatrix, RMatrix]:
    """A commuting first square between members.  Any commuting square extends
    to a morphism (axiom N3), so sampling full morphisms loses nothing."""
    m = random_morphism(x, y, u, rng)
    return m.phis[0], m.phis[1]


def random_homotopy_deformation(phi: SeqMorphism, rng: random.Random):
    """Random Θ and the morphism ψ = φ - (Θ∘α + β∘Θ); when source and target
    are candidates the boundary of any Θ is a morphism, so (φ, ψ, Θ) is a
    verified homotopic pair."""
    from .homotopy import Homotopy

    x, y = phi.source, phi.target
    ring, n = x.ring, x.n
    thetas = [random_matrix(ring, y.ranks[i], x.ranks[(i + 1) % n], rng) for i in range(n)]
    psis = []
    for i in range(n):
        delta = thetas[i] @ x.maps[i] + y.maps[(i - 1) % n] @ thetas[(i - 1) % n]
        psis.append(phi.phis[i] - delta)
    psi = SeqMorphism(x, y, tuple(psis))
    return Homotopy(phi=phi, psi=psi, thetas=tuple(thetas))
