"""Slow reference implementations that share no code with the package.

Ranks use plain Python Gaussian elimination over lists, complexes are sets of
frozensets, and barcodes are found by exhaustive search over interval multisets.
"""

import itertools


def gf_rank(rows, p):
    """Rank of a list-of-lists matrix over F_p."""
    M = [[x % p for x in r] for r in rows]
    if not M or not M[0]:
        return 0
    rank, ncols = 0, len(M[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], p - 2, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = M[r][c]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def closure(simplices):
    faces = {frozenset()}
    for s in simplices:
        s = tuple(s)
        for k in range(len(s) + 1):
            faces.update(frozenset(c) for c in itertools.combinations(s, k))
    return faces


def clique_faces(m, edges):
    adj = {v: set() for v in range(m)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    faces = {frozenset()}
    for k in range(1, m + 1):
        for c in itertools.combinations(range(m), k):
            if all(b in adj[a] for a, b in itertools.combinations(c, 2)):
                faces.add(frozenset(c))
    return faces


def reduced_betti(faces, p):
    """Reduced Betti numbers of a face set (containing the empty face) by rank-nullity."""
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
    ranks = {}
    for d in by_dim:
        if d - 1 not in by_dim:
            continue
        lo = {s: k for k, s in enumerate(sorted(by_dim[d - 1]))}
        rows = [[0] * len(by_dim[d]) for _ in lo]
        for c, s in enumerate(sorted(by_dim[d])):
            for k in range(len(s)):
                rows[lo[s[:k] + s[k + 1:]]][c] = (-1) ** k
        ranks[d] = gf_rank(rows, p)
    out = {}
    for d, fs in by_dim.items():
        b = len(fs) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if b:
            out[d] = b
    return out


def betti_table(m, faces, p):
    """Bigraded Betti numbers by summing reduced Betti numbers of every full subcomplex."""
    table = {}
    for k in range(m + 1):
        for I in itertools.combinations(range(m), k):
            sub = {f for f in faces if f <= set(I)}
            for d, b in reduced_betti(sub, p).items():
                key = (k - d - 1, k)
                table[key] = table.get(key, 0) + b
    return table


def composite_rank(steps, s, t, dims, p):
    M = [[int(i == j) for j in range(dims[s])] for i in range(dims[s])]
    for k in range(s, t):
        S = steps[k]
        M = [[sum(S[i][l] * M[l][j] for l in range(len(M))) % p for j in range(dims[s])]
             for i in range(len(S))]
    return gf_rank(M, p) if M and M[0] else 0


def tower_intervals(dims, steps, p):
    """The unique multiset of index intervals ``[b, d)`` (``d = N`` for infinity)
    whose containment counts reproduce every composite rank, found by search."""
    N = len(dims)
    target = {(s, t): composite_rank(steps, s, t, dims, p) for s in range(N) for t in range(s, N)}
    spans = [(b, d) for b in range(N) for d in range(b + 1, N + 1)]
    found = []

    def search(k, left, chosen):
        # left[s] = dims[s] minus intervals already covering s
        if k == len(spans):
            if not any(left) and all(sum(1 for b, d in chosen if b <= s and t < d) == r
                                     for (s, t), r in target.items()):
                found.append(sorted(chosen))
            return
        b, d = spans[k]
        cap = min(left[b:min(d, N)])
        for mult in range(cap + 1):
            nxt = list(left)
            for s in range(b, min(d, N)):
                nxt[s] -= mult
            search(k + 1, nxt, chosen + [(b, d)] * mult)

    search(0, list(dims), [])
    if len(found) != 1:
        raise AssertionError(f"expected a unique decomposition, found {len(found)}")
    return found[0]
