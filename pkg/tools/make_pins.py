#!/usr/bin/env python3
"""Regenerate the pinned oracle values for the bundled presentations.

Everything is computed from scratch here: presentations are typed in as
transition-definition/filling/conjugation data, reduced with sympy's own
generator elimination, and profiled by exhaustive vectorized homomorphism
enumeration (numpy).  None of the package's search code is imported, so the
resulting file is an independent cross-check.

Subgroup counts come from the enumerated homomorphisms into symmetric groups:
an index-k subgroup is the base-point stabilizer of a transitive action on k
points, each subgroup arising from exactly (k-1)! of them, and conjugacy
classes of subgroups are isomorphism classes of transitive actions, counted by
canonicalizing each action table.  Transitive counts are re-derived a second
way (inclusion-exclusion over the base point's orbit) and, where runtime
allows, a third way (sympy's coset-table search); any disagreement aborts.

Usage: make_pins.py [--entry KEY] [--merge]
  --entry KEY   compute one entry and write tools/pins_parts/KEY.json
  --merge       combine all parts into src/linkgroup/data/pins.json
  (no flags)    compute everything sequentially, then merge
"""

import argparse
import itertools
import json
import time
from functools import reduce
from math import comb, factorial
from operator import mul
from pathlib import Path

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.fp_groups import (FpGroup, low_index_subgroups,
                                           simplify_presentation)
from sympy.combinatorics.free_groups import free_group

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "linkgroup" / "data"
PARTS = Path(__file__).resolve().parent / "pins_parts"

MAX_INDEX = 6
SYMPY_CHECK_INDEX = {"trefoil": 6}  # corpus entries are too slow for sympy's search

# Each framed-link entry: transition definitions t = arc^sign, filling products
# (one per component), and crossing conjugations x*y = y*z.
ENTRIES = {
    "u1466": {
        "arcs": list("abcdefghi"),
        "tdefs": [("t_ab", "g", -1), ("t_bc", "h", -1), ("t_cd", "b", -1),
                  ("t_de", "a", 1), ("t_ea", "f", 1), ("t_fg", "d", -1),
                  ("t_gh", "i", -1), ("t_hi", "c", -1), ("t_if", "e", 1)],
        "fillings": [["t_ab", "t_bc", "t_cd", "t_de", "t_ea"],
                     ["t_fg", "t_gh", "t_hi", "t_if"]],
        "conjugations": [("b", "g", "a"), ("c", "h", "b"), ("d", "b", "c"),
                         ("d", "a", "e"), ("e", "f", "a"), ("g", "d", "f"),
                         ("h", "i", "g"), ("i", "c", "h"), ("i", "e", "f")],
    },
    "u1563": {
        "arcs": list("jklmnopqr"),
        "tdefs": [("t_jk", "r", 1), ("t_kl", "q", -1), ("t_lm", "o", 1),
                  ("t_mn", "k", 1), ("t_no", "p", 1), ("t_oj", "m", 1),
                  ("t_pq", "l", -1), ("t_qr", "n", 1), ("t_rp", "j", 1)],
        "fillings": [["t_jk", "t_kl", "t_lm", "t_mn", "t_no", "t_oj"],
                     ["t_pq", "t_qr", "t_rp"]],
        "conjugations": [("j", "r", "k"), ("l", "q", "k"), ("l", "o", "m"),
                         ("m", "k", "n"), ("n", "p", "o"), ("o", "m", "j"),
                         ("q", "l", "p"), ("q", "n", "r"), ("r", "j", "p")],
    },
    "u2125": {
        "arcs": list("abcdefghi"),
        "tdefs": [("t_ab", "h", -1), ("t_bc", "d", 1), ("t_cd", "g", -1),
                  ("t_de", "b", 1), ("t_ef", "a", 1), ("t_fa", "i", 1),
                  ("t_gh", "c", -1), ("t_hi", "f", 1), ("t_ig", "e", -1)],
        "fillings": [["t_ab", "t_bc", "t_cd", "t_de", "t_ef", "t_fa"],
                     ["t_gh", "t_hi", "t_ig"]],
        "conjugations": [("b", "h", "a"), ("b", "d", "c"), ("d", "g", "c"),
                         ("d", "b", "e"), ("e", "a", "f"), ("f", "i", "a"),
                         ("h", "c", "g"), ("h", "f", "i"), ("g", "e", "i")],
    },
    "u2165": {
        "arcs": list("jklmnopqr"),
        "tdefs": [("t_jk", "r", -1), ("t_kl", "q", 1), ("t_lm", "j", -1),
                  ("t_mn", "k", 1), ("t_no", "p", -1), ("t_oj", "l", -1),
                  ("t_pq", "n", -1), ("t_qr", "m", 1), ("t_rp", "o", -1)],
        "fillings": [["t_jk", "t_kl", "t_lm", "t_mn", "t_no", "t_oj"],
                     ["t_pq", "t_qr", "t_rp"]],
        "conjugations": [("k", "r", "j"), ("k", "q", "l"), ("m", "j", "l"),
                         ("m", "k", "n"), ("o", "p", "n"), ("j", "l", "o"),
                         ("q", "n", "p"), ("q", "m", "r"), ("p", "o", "r")],
    },
}


def entry_group(entry):
    names = [t for t, _, _ in entry["tdefs"]] + entry["arcs"]
    F = free_group(", ".join(names))[0]
    g = dict(zip(names, F.generators))
    rels = []
    for t, arc, sign in entry["tdefs"]:
        rels.append(g[t] * g[arc] ** (-sign))
    for product in entry["fillings"]:
        rels.append(reduce(mul, (g[t] for t in product)))
    for x, y, z in entry["conjugations"]:
        rels.append(g[x] * g[y] * g[z] ** -1 * g[y] ** -1)
    return FpGroup(F, rels)


def trefoil_group():
    F, a, b = free_group("a, b")
    return FpGroup(F, [a * b * a * (b * a * b) ** -1])


def reduced_relators(fp):
    """sympy's generator elimination, then relators as (slot, sign) letters."""
    gens, rels = simplify_presentation(fp.generators, list(fp.relators),
                                       change_gens=True)
    slot = {g.array_form[0][0]: i for i, g in enumerate(gens)}
    letters = []
    for r in rels:
        seq = []
        for sym, exp in r.array_form:
            step = 1 if exp > 0 else -1
            seq.extend([(slot[sym], step)] * abs(exp))
        if seq:
            letters.append(seq)
    letters.sort(key=len)
    return letters, len(gens), (gens, rels)


def entry_homology(entry_key):
    """Invariant factors of the abelianized relator matrix, via sympy SNF."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    if entry_key == "trefoil":
        rows = [[1, -1]]
        n_gens = 2
    else:
        entry = ENTRIES[entry_key]
        names = [t for t, _, _ in entry["tdefs"]] + entry["arcs"]
        col = {n: i for i, n in enumerate(names)}
        n_gens = len(names)
        rows = []
        for t, arc, sign in entry["tdefs"]:
            r = [0] * n_gens
            r[col[t]] += 1
            r[col[arc]] -= sign
            rows.append(r)
        for product in entry["fillings"]:
            r = [0] * n_gens
            for t in product:
                r[col[t]] += 1
            rows.append(r)
        for x, y, z in entry["conjugations"]:
            r = [0] * n_gens
            r[col[x]] += 1
            r[col[z]] -= 1
            rows.append(r)
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d != 0]
    torsion = [d for d in nonzero if d > 1]
    free_rank = n_gens - len(nonzero)
    return torsion + [0] * free_rank


def tables_from_perms(perm_tuples):
    elems = sorted(perm_tuples)
    index = {p: i for i, p in enumerate(elems)}
    degree = len(elems[0])
    n = len(elems)
    MUL = np.empty((n, n), dtype=np.int32)
    INV = np.empty(n, dtype=np.int32)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            MUL[i, j] = index[tuple(q[x] for x in p)]
        ip = [0] * degree
        for k, x in enumerate(p):
            ip[x] = k
        INV[i] = index[tuple(ip)]
    return MUL, INV, index[tuple(range(degree))], elems


def group_tables(gen_lists, declared_order):
    perms = [Permutation(p) for p in gen_lists]
    G = PermutationGroup(perms)
    if G.order() != declared_order:
        raise RuntimeError("order mismatch: %d vs %d" % (G.order(), declared_order))
    degree = max(len(p) for p in gen_lists)
    return tables_from_perms([tuple(p(i) for i in range(degree))
                              for p in G.elements])


def symmetric_tables(k):
    return tables_from_perms(list(itertools.permutations(range(k))))


def satisfying_images(rels, m, MUL, INV, E):
    """All image tuples satisfying every relator, plus the total count.

    Enumeration is exhaustive over |G|^m with lane compaction: after each
    relator only the surviving assignments are evaluated further.
    """
    n = len(INV)
    if m == 0:
        return [()], 1
    if m == 1:
        X0 = np.arange(n, dtype=np.int32)
        ok = np.ones(n, dtype=bool)
        for letters in rels:
            X = np.full(n, E, dtype=np.int32)
            for _, sign in letters:
                Y = X0 if sign > 0 else INV[X0]
                X = MUL[X, Y]
            ok &= X == E
        return [(int(v),) for v in np.nonzero(ok)[0]], int(ok.sum())

    size = n ** (m - 1)
    base_vals = []
    for s in range(1, m):
        period = n ** (m - 1 - s)
        base_vals.append(((np.arange(size) // period) % n).astype(np.int32))
    out = []
    total = 0
    for a0 in range(n):
        vals = base_vals
        alive = True
        for letters in rels:
            X = np.full(len(vals[0]), E, dtype=np.int32)
            for s, sign in letters:
                if s == 0:
                    y = a0 if sign > 0 else int(INV[a0])
                    X = MUL[X, y]
                else:
                    Y = vals[s - 1] if sign > 0 else INV[vals[s - 1]]
                    X = MUL[X, Y]
            keep = X == E
            if not keep.any():
                alive = False
                break
            vals = [v[keep] for v in vals]
        if not alive:
            continue
        count = len(vals[0])
        total += count
        for i in range(count):
            out.append((a0, *(int(v[i]) for v in vals)))
    return out, total


def closure_order(images, MUL, E):
    seen = {E}
    frontier = [E]
    while frontier:
        nxt = []
        for x in frontier:
            for g in images:
                y = int(MUL[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def hom_counts(rels, m, MUL, INV, E):
    """(all homs, surjective homs) by exhaustive enumeration."""
    n = len(INV)
    images, total = satisfying_images(rels, m, MUL, INV, E)
    surj = 0
    memo = {}
    for tup in images:
        key = tuple(sorted(set(tup)))
        o = memo.get(key)
        if o is None:
            o = closure_order(key, MUL, E)
            memo[key] = o
        if o == n:
            surj += 1
    if m == 0:
        surj = 1 if n == 1 else 0
    return total, surj


def canonical_action(perms, k):
    """Canonical form of the action of the image tuple on 0..k-1.

    Returns None unless the action is transitive.  The form is the minimum,
    over base points, of the breadth-first renumbered action table, so two
    image tuples get the same form exactly when their actions are isomorphic.
    """
    cols = []
    for p in perms:
        cols.append(p)
        ip = [0] * k
        for i, x in enumerate(p):
            ip[x] = i
        cols.append(tuple(ip))
    best = None
    for root in range(k):
        nu = {root: 0}
        order_list = [root]
        i = 0
        while i < len(order_list):
            v = order_list[i]
            for col in cols:
                w = col[v]
                if w not in nu:
                    nu[w] = len(order_list)
                    order_list.append(w)
            i += 1
        if len(order_list) < k:
            return None
        flat = tuple(nu[col[v]] for v in order_list for col in cols)
        if best is None or flat < best:
            best = flat
    return best


def subgroup_counts(rels, m, kmax):
    """{index: [classes, total]} for 2..kmax, from symmetric-group actions."""
    per = {}
    h = {0: 1, 1: 1}
    transitive = {1: 1}
    for k in range(2, kmax + 1):
        MUL, INV, E, elems = symmetric_tables(k)
        images, total_homs = satisfying_images(rels, m, MUL, INV, E)
        h[k] = total_homs
        forms = set()
        n_transitive = 0
        for tup in images:
            form = canonical_action([elems[v] for v in tup], k)
            if form is not None:
                n_transitive += 1
                forms.add(form)
        transitive[k] = n_transitive
        if n_transitive % factorial(k - 1):
            raise RuntimeError("index %d: transitive count %d not divisible"
                               % (k, n_transitive))
        per[k] = [len(forms), n_transitive // factorial(k - 1)]
    # second derivation of the transitive counts, by inclusion-exclusion
    for k in range(2, kmax + 1):
        acc = h[k]
        for j in range(1, k):
            acc -= comb(k - 1, j - 1) * transitive[j] * h[k - j]
        if acc != transitive[k]:
            raise RuntimeError("index %d: inclusion-exclusion says %d "
                               "transitive actions, enumeration found %d"
                               % (k, acc, transitive[k]))
    return per


def standardize(table, root, ncols):
    nu = {root: 0}
    order_list = [root]
    i = 0
    while i < len(order_list):
        v = order_list[i]
        for c in range(ncols):
            w = table[v][c]
            if w not in nu:
                nu[w] = len(order_list)
                order_list.append(w)
        i += 1
    flat = []
    for v in order_list:
        flat.extend(nu[table[v][c]] for c in range(ncols))
    return tuple(flat)


def sympy_low_index(group, kmax):
    per = {k: [0, 0] for k in range(2, kmax + 1)}
    for tab in low_index_subgroups(group, kmax):
        k = tab.n
        if k < 2:
            continue
        ncols = len(tab.A)
        rows = [row[:ncols] for row in tab.table[:k]]
        size = len({standardize(rows, r, ncols) for r in range(k)})
        per[k][0] += 1
        per[k][1] += size
    return per


def compute_entry(key):
    t0 = time.time()
    catalog = json.loads((DATA / "catalog.json").read_text())
    fp = trefoil_group() if key == "trefoil" else entry_group(ENTRIES[key])
    rels, m, (gens, reduced) = reduced_relators(fp)
    print("%s: reduced to %d generators, %d relators, lengths %s"
          % (key, m, len(rels), sorted(len(r) for r in rels)), flush=True)

    homology = entry_homology(key)
    print("  homology:", homology, flush=True)

    counts = {}
    for g in catalog["groups"]:
        MUL, INV, E, _ = group_tables(g["generators"], g["order"])
        counts[g["name"]] = list(hom_counts(rels, m, MUL, INV, E))
        print("  homs -> %s (order %d): %s  [%.1fs]"
              % (g["name"], g["order"], counts[g["name"]], time.time() - t0),
              flush=True)

    low = subgroup_counts(rels, m, MAX_INDEX)
    print("  low-index via actions:", low, " [%.1fs]" % (time.time() - t0),
          flush=True)

    check_k = SYMPY_CHECK_INDEX.get(key)
    if check_k:
        F = gens[0].group
        via_tables = sympy_low_index(FpGroup(F, reduced), check_k)
        for k in range(2, check_k + 1):
            if via_tables[k] != low[k]:
                raise RuntimeError("low-index mismatch at %d: tables %s, "
                                   "actions %s" % (k, via_tables[k], low[k]))
        print("  coset-table cross-check to index %d: ok" % check_k, flush=True)

    part = {
        "homology": homology,
        "hom_counts": counts,
        "low_index": {str(k): low[k] for k in sorted(low)},
    }
    PARTS.mkdir(exist_ok=True)
    path = PARTS / ("%s.json" % key)
    path.write_text(json.dumps(part, indent=2, sort_keys=True) + "\n")
    print("%s done in %.1fs -> %s" % (key, time.time() - t0, path), flush=True)


def merge():
    catalog = json.loads((DATA / "catalog.json").read_text())
    pins = {"version": 1, "max_index": MAX_INDEX,
            "catalog_version": catalog["version"], "entries": {}}
    for key in ["trefoil"] + sorted(ENTRIES):
        part = json.loads((PARTS / ("%s.json" % key)).read_text())
        pins["entries"][key] = part
    out = DATA / "pins.json"
    out.write_text(json.dumps(pins, indent=2, sort_keys=True) + "\n")
    print("wrote", out)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--entry", default=None)
    ap.add_argument("--merge", action="store_true")
    args = ap.parse_args()
    if args.entry:
        compute_entry(args.entry)
        return
    if args.merge:
        merge()
        return
    for key in ["trefoil"] + sorted(ENTRIES):
        compute_entry(key)
    merge()


if __name__ == "__main__":
    main()
