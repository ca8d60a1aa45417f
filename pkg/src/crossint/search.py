"""Extremal search for maximal cross t-intersecting pairs.

Two modes:

* ``exhaustive`` walks every closed family with next-closure and is a
  proof of optimality when it completes.
* ``seeded`` evaluates the maximal pair generated by each small generator
  set from a fixed schedule (all singletons, all pairs when affordable,
  then random draws).  It can only report "nothing better found".

A generator set g on one side yields the maximal pair (dual(g),
dual(dual(g))): dual(dual(dual(g))) = dual(g), so both sides are duals
of each other.
"""

from __future__ import annotations

import json
import math
import os
import random
from dataclasses import dataclass, field

import numpy as np

from .duality import ClosureBudgetExceeded, DualContext, best_maximal_pairs
from .parallel import pmap
from .partitions import Family, Partition, universe
from .tuples import is_nontrivial, iterate_tuple_dual, tuple_dual, tuple_product

CHUNK = 512


@dataclass
class SearchResult:
    best_product: int
    witness_families: list[Family]
    mode: str
    nontrivial_constraint: bool
    certificate: dict = field(default_factory=dict)
    all_witnesses: list = field(default_factory=list, repr=False)

    @property
    def exhaustive(self) -> bool:
        return self.mode == "exhaustive" and bool(self.certificate.get("complete"))

    def to_dict(self) -> dict:
        return {
            "best_product": str(self.best_product),
            "mode": self.mode,
            "exhaustive": self.exhaustive,
            "nontrivial": self.nontrivial_constraint,
            "certificate": self.certificate,
            "witnesses": [
                {"n": f.n, "k": f.k, "size": len(f), "members": [p.to_text() for p in f]}
                for f in self.witness_families
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# -- seeded search ------------------------------------------------------


def build_schedule(
    ctx: DualContext, gen_max: int, seed: int, n_random: int, pair_cap: int
) -> tuple[list[tuple[str, tuple[int, ...]]], dict]:
    sides = ["l"] if ctx.k == ctx.l else ["l", "k"]
    sched: list[tuple[str, tuple[int, ...]]] = []
    desc = {"seed": seed, "gen_max": gen_max, "sides": sides, "singletons": 0, "pairs": 0, "random": 0}
    for side in sides:
        N = ctx.U[side].size
        sched.extend((side, (i,)) for i in range(N))
        desc["singletons"] += N
    if gen_max >= 2:
        for side in sides:
            N = ctx.U[side].size
            if math.comb(N, 2) <= pair_cap:
                sched.extend((side, (i, j)) for i in range(N) for j in range(i + 1, N))
                desc["pairs"] += math.comb(N, 2)
    rng = random.Random(seed)
    for _ in range(n_random):
        side = sides[rng.randrange(len(sides))]
        N = ctx.U[side].size
        size = rng.randint(1, min(gen_max, N))
        sched.append((side, tuple(sorted(rng.sample(range(N), size)))))
    desc["random"] = n_random
    desc["total"] = len(sched)
    return sched, desc


_CTX: dict[tuple, DualContext] = {}


def _context(params) -> DualContext:
    ctx = _CTX.get(params)
    if ctx is None:
        n, k, l, t, backend = params
        ctx = _CTX[params] = DualContext(n, k, l, t, budget=None, backend=backend)
    return ctx


def _common_count(ctx: DualContext, F: int, G: int) -> int:
    """Number of blocks lying in every member of F and of G."""
    common = None
    for side, bits in (("k", F), ("l", G)):
        U = ctx.U[side]
        rows = U.masks[U.indices(bits)]
        cand = rows[0] if common is None else np.array(sorted(common), dtype=np.uint64)
        keep = {int(b) for b in cand if (rows == b).any(axis=1).all()}
        common = keep if common is None else common & keep
        if not common:
            return 0
    return len(common)


def _eval_chunk(payload):
    params, nontrivial, start, items = payload
    ctx = _context(params)
    best = (0, -1, 0, 0)  # product, position, F bits, G bits
    for off, (side, idx) in enumerate(items):
        g = 0
        for i in idx:
            g |= 1 << i
        other = ctx.dual_bits(g, side)
        if not other:
            continue
        same = ctx.dual_bits(other, ctx.other(side))
        prod = other.bit_count() * same.bit_count()
        if prod <= best[0]:
            continue
        F, G = (same, other) if side == "k" else (other, same)
        if nontrivial and _common_count(ctx, F, G) >= ctx.t:
            continue
        best = (prod, start + off, F, G)
    return best


def _config(ctx, gen_max, nontrivial, seed, n_random, pair_cap):
    return {
        "n": ctx.n, "k": ctx.k, "l": ctx.l, "t": ctx.t, "gen_max": gen_max,
        "nontrivial": nontrivial, "seed": seed, "n_random": n_random, "pair_cap": pair_cap,
    }


def seeded_search(
    ctx: DualContext,
    gen_max: int = 2,
    nontrivial: bool = False,
    seed: int = 0,
    n_random: int = 10_000,
    pair_cap: int = 200_000,
    workers: int | None = None,
    checkpoint: str | None = None,
) -> SearchResult:
    """Best product over the maximal pairs generated by the seed schedule.

    Deterministic for a fixed seed: chunks are reduced in schedule order
    with ties going to the earliest schedule position.
    """
    sched, desc = build_schedule(ctx, gen_max, seed, n_random, pair_cap)
    params = (ctx.n, ctx.k, ctx.l, ctx.t, ctx.backend)
    _CTX.setdefault(params, ctx)
    config = _config(ctx, gen_max, nontrivial, seed, n_random, pair_cap)
    best = (0, -1, 0, 0)
    pos = 0
    if checkpoint and os.path.exists(checkpoint):
        best, pos = _load_checkpoint(checkpoint, ctx, config)
    chunks = [
        (params, nontrivial, s, sched[s : s + CHUNK]) for s in range(pos, len(sched), CHUNK)
    ]
    group = max(1, (workers or 1) * 4)
    for g0 in range(0, len(chunks), group):
        part = chunks[g0 : g0 + group]
        for res in pmap(_eval_chunk, part, workers):
            if res[0] > best[0] or (res[0] == best[0] and 0 <= res[1] < best[1]):
                best = res
        pos = part[-1][2] + len(part[-1][3])
        if checkpoint:
            _save_checkpoint(checkpoint, ctx, config, best, pos)
    prod, where, F, G = best
    wits = [ctx.family(F, "k"), ctx.family(G, "l")] if prod else []
    cert = {"schedule": desc, "evaluated": len(sched), "best_position": where, "complete": False}
    return SearchResult(prod, wits, "seeded", nontrivial, cert)


def _save_checkpoint(path, ctx, config, best, pos):
    prod, where, F, G = best
    data = {
        "config": config,
        "position": pos,
        "best_product": str(prod),
        "best_position": where,
        "F": [p.to_text() for p in ctx.family(F, "k")] if prod else [],
        "G": [p.to_text() for p in ctx.family(G, "l")] if prod else [],
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh, sort_keys=True)
    os.replace(tmp, path)


def _load_checkpoint(path, ctx, config):
    with open(path) as fh:
        data = json.load(fh)
    if data.get("config") != config:
        raise ValueError(f"checkpoint {path} was written for a different configuration")
    n = ctx.n
    F = ctx.bits(Family(n, ctx.k, [Partition.parse(s, n) for s in data["F"]]), "k")
    G = ctx.bits(Family(n, ctx.l, [Partition.parse(s, n) for s in data["G"]]), "l")
    return (int(data["best_product"]), data["best_position"], F, G), data["position"]


def exhaustive_search(ctx: DualContext, nontrivial: bool = False, budget: int | None = None) -> SearchResult:
    """Optimal maximal pairs by complete next-closure enumeration.

    When the closure budget runs out the result carries the partial
    certificate and ``complete`` is false.
    """
    try:
        summary = best_maximal_pairs(ctx, nontrivial, budget)
    except ClosureBudgetExceeded as exc:
        c = exc.partial
        cert = {"closed_visited": c.closed_count, "evaluations": c.evaluations,
                "budget": c.budget, "complete": False}
        return SearchResult(0, [], "exhaustive", nontrivial, cert)
    c = summary.certificate
    cert = {"closed_visited": c.closed_count, "evaluations": c.evaluations,
            "budget": c.budget, "complete": True, "optimal_pairs": len(summary.witnesses)}
    wits = list(summary.witnesses[0]) if summary.witnesses else []
    return SearchResult(summary.best_product, wits, "exhaustive", nontrivial, cert, summary.witnesses)


# -- r >= 3 tuples ---------------------------------------------------------


def _tuple_eval_chunk(payload):
    n, ks, t, nontrivial, start, seeds = payload
    best = (0, -1, None)
    cycles = 0
    for off, choice in enumerate(seeds):
        fams = [Family(n, ks[0])]
        for k, idx in zip(ks[1:], choice):
            U = universe(n, k)
            fams.append(Family._ordered(n, k, [U.members[i] for i in idx]))
        fams[0] = tuple_dual(0, fams, t)
        if not len(fams[0]):
            continue
        res = iterate_tuple_dual(fams, t)
        if res.status != "fixed":
            cycles += 1
            continue
        fams = res.families
        prod = tuple_product(fams)
        if prod <= best[0]:
            continue
        if nontrivial and not is_nontrivial(fams, t):
            continue
        best = (prod, start + off, [[p.to_text() for p in f] for f in fams])
    return best, cycles


def seeded_tuple_search(
    n: int,
    ks,
    t: int,
    nontrivial: bool = False,
    seed: int = 0,
    n_random: int = 100,
    gen_max: int = 1,
    workers: int | None = None,
    budget: int | None = None,
) -> SearchResult:
    """Best product over maximal r-tuples grown from random seeds.

    Each seed fixes 1..gen_max random members for every family but the
    first; the first becomes the tuple dual of the rest, then all families
    are replaced by their tuple duals until a fixed point.  Seeds whose
    iteration cycles are counted in the certificate and not scored.
    """
    ks = list(ks)
    sizes = [universe(n, k, budget).size for k in ks]
    rng = random.Random(seed)
    seeds = []
    for _ in range(n_random):
        seeds.append(tuple(
            tuple(sorted(rng.sample(range(N), rng.randint(1, min(gen_max, N))))) for N in sizes[1:]
        ))
    chunks = [(n, ks, t, nontrivial, s, seeds[s : s + 8]) for s in range(0, len(seeds), 8)]
    best = (0, -1, None)
    cycles = 0
    for res, c in pmap(_tuple_eval_chunk, chunks, workers):
        cycles += c
        if res[0] > best[0]:
            best = res
    prod, where, texts = best
    wits = []
    if prod:
        wits = [Family(n, k, [Partition.parse(s, n) for s in fam]) for k, fam in zip(ks, texts)]
    cert = {
        "schedule": {"seed": seed, "gen_max": gen_max, "random": n_random, "ks": ks},
        "evaluated": len(seeds), "best_position": where, "complete": False,
        "cycles": cycles,
    }
    return SearchResult(prod, wits, "seeded", nontrivial, cert)
