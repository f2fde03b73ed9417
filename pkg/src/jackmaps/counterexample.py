"""Pointwise evaluation of the series for a one-part face-type at three blocks.

For pi = (n) the base pairings form one 2n-gon, whose symmetry group (the
rotations by an even step and the reflections that keep B and W) acts on the
edge pairings E.  Relabeling changes neither omega_M nor the bipartite graph,
so only lexicographically minimal E per orbit are visited and each is
weighted by its orbit size.  At alpha = 1 the weights are evaluated at
gamma = 0 with twisted branches pruned.

Work is split into shards by the first two edges; each finished shard can be
written to a checkpoint directory and is skipped when the run is resumed.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .algebra import GammaPoly, QuadExt, gamma_value
from .embeddings import BipartiteGraph, canonical_graph_key, count_embeddings_multirect
from .jack import character
from .nonorientability import POLY_WEIGHTS, ZERO_GAMMA_WEIGHTS, WeightMemo, _recursive_mean
from .pairings import canonical_base_pairings
from .partition import Partition

COEFFICIENT = Fraction(41, 70)
DEFAULT_P = (1, 1, 1)


def base_symmetries(n):
    """Label permutations of 0..2n-1 fixing both base pairings of type (n), identity first."""
    m = 2 * n
    out = [tuple((x + 2 * k) % m for x in range(m)) for k in range(n)]
    out += [tuple((1 - x + 2 * k) % m for x in range(m)) for k in range(n)]
    B, W = canonical_base_pairings((n,))
    for g in out:
        for P in (B, W):
            for x, y in P.partner.items():
                if P.partner[g[x]] != g[y]:
                    raise AssertionError("not a symmetry of the base pairings")
    return out


def _inverse(g):
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def _stabilizer_if_minimal(e, group):
    """Stabilizer order of e if e is the lexicographic minimum of its orbit, else 0."""
    stab = 1
    for g, ginv in group:
        for y in range(len(e)):
            v = g[e[ginv[y]]]
            if v < e[y]:
                return 0
            if v > e[y]:
                break
        else:
            stab += 1
    return stab


def shards(n):
    """Pairs (a, b): label 0 is matched to a and the smallest other label to b."""
    m = 2 * n
    out = []
    for a in range(1, m):
        rest = [x for x in range(1, m) if x != a]
        if not rest:
            out.append((a, None))
            continue
        for b in rest[1:]:
            out.append((a, b))
    return out


def _pairings_into(e, free):
    if not free:
        yield e
        return
    x = free[0]
    for i in range(1, len(free)):
        y = free[i]
        e[x], e[y] = y, x
        yield from _pairings_into(e, free[1:i] + free[i + 1:])
    e[x] = e[free[i]] = -1


def _shard_edges(n, shard):
    m = 2 * n
    a, b = shard
    e = [-1] * m
    e[0], e[a] = a, 0
    free = [x for x in range(1, m) if x != a]
    if b is None:
        yield e
        return
    x = free[0]
    e[x], e[b] = b, x
    yield from _pairings_into(e, [y for y in free[1:] if y != b])


def _graph_key(e, n):
    # black vertices: cycles of E o B; white vertices: cycles of E o W
    m = 2 * n

    def cycles(p):
        lab = [-1] * m
        c = 0
        for s in range(m):
            if lab[s] >= 0:
                continue
            x = s
            while lab[x] < 0:
                lab[x] = c
                lab[e[x]] = c
                x = p(e[x])
            c += 1
        return lab, c

    blk, nb = cycles(lambda x: x ^ 1)
    wht, nw = cycles(lambda x: (x + 1) % m if x % 2 else (x - 1) % m)
    edges = set()
    for s in range(m):
        if s < e[s]:
            edges.add((blk[s], wht[s]))
    return canonical_graph_key(BipartiteGraph(nb, nw, sorted(edges)))


def run_shard(args):
    """graph key -> sum over orbit representatives of orbit size times omega."""
    n, shard, zero_gamma, memo_mode = args
    group = [(g, _inverse(g)) for g in base_symmetries(n)[1:]]
    order = len(group) + 1
    B, W = canonical_base_pairings((n,))
    b, w = dict(B.partner), dict(W.partner)
    weights = ZERO_GAMMA_WEIGHTS if zero_gamma else POLY_WEIGHTS
    zero = Fraction(0) if zero_gamma else GammaPoly()
    memo = WeightMemo(memo_mode)
    out = {}
    reps = 0
    for e in _shard_edges(n, shard):
        stab = _stabilizer_if_minimal(e, group)
        if not stab:
            continue
        reps += 1
        om = _recursive_mean(b, w, dict(enumerate(e)), weights, memo, zero)
        if not om:
            continue
        key = _graph_key(e, n)
        term = om * (order // stab)
        prev = out.get(key)
        out[key] = term if prev is None else prev + term
    return out, reps


def _encode(table, zero_gamma):
    rows = []
    for (nb, sets), v in sorted(table.items(), key=lambda kv: repr(kv[0])):
        val = str(v) if zero_gamma else [str(c) for c in v.coeffs]
        rows.append([nb, [sorted(s) for s in sets], val])
    return rows


def _decode(rows, zero_gamma):
    out = {}
    for nb, sets, val in rows:
        key = (nb, tuple(frozenset(s) for s in sets))
        out[key] = Fraction(val) if zero_gamma else GammaPoly(tuple(Fraction(c) for c in val))
    return out


def _shard_path(directory, n, shard, zero_gamma):
    tag = "g0" if zero_gamma else "poly"
    return os.path.join(directory, f"n{n}_{tag}_{shard[0]}_{shard[1]}.json")


def aggregate_one_part(n, zero_gamma=True, jobs=1, memo="canonical", checkpoint=None, progress=None):
    """Merged graph table over all maps of face-type (n), plus the number of representatives."""
    todo = []
    parts = []
    reps = 0
    for sh in shards(n):
        path = checkpoint and _shard_path(checkpoint, n, sh, zero_gamma)
        if path and os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            parts.append(_decode(data["table"], zero_gamma))
            reps += data["reps"]
        else:
            todo.append(sh)
    args = [(n, sh, zero_gamma, memo) for sh in todo]

    total = len(shards(n))

    def done(sh, res):
        nonlocal reps
        table, r = res
        reps += r
        parts.append(table)
        if checkpoint:
            os.makedirs(checkpoint, exist_ok=True)
            path = _shard_path(checkpoint, n, sh, zero_gamma)
            with open(path + ".tmp", "w") as fh:
                json.dump({"reps": r, "table": _encode(table, zero_gamma)}, fh)
            os.replace(path + ".tmp", path)
        if progress:
            progress(len(parts), total)

    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for sh, res in zip(todo, ex.map(run_shard, args)):
                done(sh, res)
    else:
        for sh, a in zip(todo, args):
            done(sh, run_shard(a))
    merged = {}
    for part in parts:
        for k, v in part.items():
            prev = merged.get(k)
            merged[k] = v if prev is None else prev + v
    return merged, reps


def one_part_series(n, P, Q, alpha, jobs=1, memo="canonical", checkpoint=None, progress=None) -> QuadExt:
    """Series value for face-type (n) at the multirectangular point (P, Q)."""
    alpha = Fraction(alpha)
    zero_gamma = alpha == 1
    table, _ = aggregate_one_part(n, zero_gamma, jobs, memo, checkpoint, progress)
    s = QuadExt.s(alpha)
    inv = s / alpha
    g = gamma_value(alpha)
    total = QuadExt(alpha, 0)
    for (nb, sets), w in table.items():
        N = count_embeddings_multirect(BipartiteGraph(nb, len(sets), [(x, j) for j, t in enumerate(sets) for x in t]), P, Q)
        if not N:
            continue
        om = QuadExt(alpha, w) if zero_gamma else w(g)
        total = total + (-inv) ** nb * s ** len(sets) * om * N
    return -total


def predicted_difference(P, Q, alpha) -> QuadExt:
    """41/70 (2 gamma^2 - 1) sum_{i<j<k} p_i p_j p_k (q_k - q_j)(q_i - q_j) q_k."""
    alpha = Fraction(alpha)
    g = gamma_value(alpha)
    ell = len(P)
    acc = 0
    for i in range(ell):
        for j in range(i + 1, ell):
            for k in range(j + 1, ell):
                acc += P[i] * P[j] * P[k] * (Q[k] - Q[j]) * (Q[i] - Q[j]) * Q[k]
    return (g * g * 2 - 1) * COEFFICIENT * acc


def diagram_of(P, Q) -> Partition:
    if any(Q[i] < Q[i + 1] for i in range(len(Q) - 1)):
        raise ValueError("Q must be weakly decreasing to describe a diagram")
    rows = []
    for p, q in zip(P, Q):
        rows += [q] * p
    return Partition(r for r in rows if r)


def counterexample(alpha=1, Q=(3, 2, 1), P=DEFAULT_P, n=9, jobs=1, memo="canonical",
                   checkpoint=None, progress=None) -> dict:
    """Series minus character for face-type (n) at P x Q, against the predicted difference."""
    if not 1 <= n <= 9:
        raise ValueError("the prediction is known for face-types (n) with n <= 9 only")
    start = time.perf_counter()
    alpha = Fraction(alpha)
    lam = diagram_of(P, Q)
    series = one_part_series(n, P, Q, alpha, jobs, memo, checkpoint, progress)
    ch = character((n,), lam, alpha)
    diff = series - ch
    # below size 9 the two sides agree
    pred = predicted_difference(P, Q, alpha) if n == 9 else QuadExt(alpha, 0)
    return {
        "pi": [n],
        "P": list(P),
        "Q": list(Q),
        "alpha": alpha,
        "series": series,
        "character": ch,
        "difference": diff,
        "predicted": pred,
        "pass": diff == pred,
        "seconds": time.perf_counter() - start,
    }
