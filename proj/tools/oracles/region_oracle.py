#!/usr/bin/env python3
# Copyright 2026 The qdlab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Brute-force region enumerator used to freeze tests/golden/region_n*.json.

Works in Cartesian coordinates with BFS graph distance, independent of the
hex-distance formula and face indexing used by the library.
"""
import json
import math
import sys
from collections import deque


def cart(a, b):
    return (a + 0.5 * b, b * math.sqrt(3) / 2)


def neighbours(v, box):
    out = []
    for a in range(v[0] - 1, v[0] + 2):
        for b in range(v[1] - 1, v[1] + 2):
            if (a, b) == v or max(abs(a), abs(b)) > box:
                continue
            p, q = cart(*v), cart(a, b)
            if abs(math.dist(p, q) - 1) < 1e-9:
                out.append((a, b))
    return out


def enumerate_region(n):
    box = n + 4
    dist = {(0, 0): 0}
    queue = deque([(0, 0)])
    while queue:
        v = queue.popleft()
        for w in neighbours(v, box):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    verts = [v for v in dist if max(abs(v[0]), abs(v[1])) <= box - 1]
    # Faces: triples of mutually adjacent vertices.
    faces = set()
    for v in verts:
        nb = neighbours(v, box)
        for x in nb:
            for y in nb:
                if x < y and y in neighbours(x, box):
                    faces.add(tuple(sorted((v, x, y))))
    F = [f for f in faces if any(dist[v] <= n for v in f)]
    count = {}
    for f in F:
        for i in range(3):
            for j in range(i + 1, 3):
                p, q = f[i], f[j]
                # canonical orientation: left to right in the plane
                if cart(*p)[0] > cart(*q)[0]:
                    p, q = q, p
                count[(p, q)] = count.get((p, q), 0) + 1
    V = sorted(v for v in verts if dist[v] <= n)
    dV = sorted(v for v in verts if dist[v] == n + 1)
    E = sorted(count)
    dE = sorted(e for e, c in count.items() if c == 1)
    return {
        "n": n,
        "V": [list(v) for v in V],
        "dV": [list(v) for v in dV],
        "F": [[list(v) for v in f] for f in sorted(F)],
        "E": [[list(e[0]), list(e[1])] for e in E],
        "dE": [[list(e[0]), list(e[1])] for e in dE],
        "counts": {"V": len(V), "Vdot": len(V) - 1, "dV": len(dV), "F": len(F), "E": len(E), "dE": len(dE)},
    }


if __name__ == "__main__":
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "tests/golden"
    for n in (1, 2, 3):
        with open(f"{out_dir}/region_n{n}.json", "w") as fh:
            json.dump(enumerate_region(n), fh, indent=1)
            fh.write("\n")
