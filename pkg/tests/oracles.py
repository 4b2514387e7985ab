"""Slow reference implementations shared by the tests."""

import math


def average_ranks(xs):
    # rank = 1 + number strictly below + half the other ties
    return [1 + sum(y < x for y in xs) + (sum(y == x for y in xs) - 1) / 2 for x in xs]


def spearman(xs, ys):
    rx, ry = average_ranks(xs), average_ranks(ys)
    n = len(xs)
    mx, my = sum(rx) / n, sum(ry) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    vx = sum((a - mx) ** 2 for a in rx)
    vy = sum((b - my) ** 2 for b in ry)
    return cov / math.sqrt(vx * vy)


def brute_force(types, target):
    """Every planar contraction matching leaving exactly one uncovered ``target``."""
    n = len(types)
    found = []

    def extend(i, links, unmatched):
        if i == n:
            if len(unmatched) == 1 and types[unmatched[0]] == target:
                found.append(tuple(sorted(links)))
            return
        if any(k == i for _, k in links):
            extend(i + 1, links, unmatched)
            return
        extend(i + 1, links, unmatched + [i])
        for j in range(i + 1, n):
            if any(k == j or l == j for k, l in links):
                continue
            if not (types[i].base == types[j].base and types[j].z == types[i].z + 1):
                continue
            link = (i, j)
            if any(a < i < b < j or i < a < j < b for a, b in links):
                continue
            extend(i + 1, links + [link], unmatched)

    extend(0, [], [])
    valid = []
    for links in found:
        used = {k for l in links for k in l}
        rest = [k for k in range(n) if k not in used]
        if not any(a < k < b for k in rest for a, b in links):
            valid.append(links)
    return sorted(set(valid))
