# Copyright 2026 The idface Authors
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

"""Reference values frozen into the C++ tests.

Run with: python3 oracle_values.py
Every number here is computed independently of the library (scipy double
integrals, exact integer arithmetic, Python big integers).
"""

import json
import math

import numpy as np
from scipy import integrate, special, stats


def threshold(d, alpha):
    return math.sqrt(2.0) * special.erfinv(1.0 - alpha / d)


def agreement(d, alpha, theta):
    # U ~ N(0,1), V ~ N(0, tan^2 theta); both coordinates survive when
    # |U| > c and |U + V| > c/|cos theta|. Integrate the joint density over
    # the same-sign minus opposite-sign regions with U > c directly in 2D.
    c = threshold(d, alpha)
    a = c / abs(math.cos(theta))
    s = abs(math.tan(theta))
    dens = lambda v, u: stats.norm.pdf(u) * stats.norm.pdf(v, scale=s)
    lim = 12.0 * s + 12.0 + a
    same, _ = integrate.dblquad(dens, c, 12.0, lambda u: a - u, lambda u: lim, epsabs=1e-11)
    opp, _ = integrate.dblquad(dens, c, 12.0, lambda u: -lim, lambda u: -a - u, epsabs=1e-11)
    p = same - opp
    return p if math.cos(theta) > 0 else -p


def epsilon(d, alpha, theta):
    return abs(math.cos(theta) - 2.0 * agreement(d, alpha, theta) * d / alpha)


def codebook_argmax(d):
    vals = [math.comb(d, a) * 2 ** a for a in range(1, d + 1)]
    best = max(vals)
    return [a for a, v in zip(range(1, d + 1), vals) if v == best]


def capacity(slot_bits, alpha, beta):
    p = min(alpha, beta) + 1
    w = math.ceil(math.log2(p))
    return p, w, slot_bits // w


def paillier_encrypt(p, q, m, r):
    n = p * q
    n2 = n * n
    return ((1 + m * n) * pow(r, n, n2)) % n2


def main():
    out = {}
    out["threshold"] = {f"{d},{a}": threshold(d, a) for d, a in [(512, 341), (512, 256), (256, 171), (128, 85)]}
    thetas = [0.3, 0.8, math.acos(0.7), math.acos(0.05), 2.5]
    out["epsilon_512_341"] = {repr(t): epsilon(512, 341, t) for t in thetas}
    grid = np.linspace(0.05, math.pi - 0.05, 50)
    eps = [epsilon(512, 341, t) for t in grid]
    i = int(np.argmax(eps))
    out["epsilon_grid50_max"] = {"max": eps[i], "cos_at_max": math.cos(grid[i])}
    out["codebook_argmax"] = {d: codebook_argmax(d) for d in [3, 128, 192, 256, 512]}
    out["capacity"] = {f"{s},{a},{b}": capacity(s, a, b) for s in [2048, 50] for a, b in
                       [(341, 63), (341, 127), (341, 341)]}
    # Costs.
    D, beta, d = 10**6, 341, 512
    twopc = (2 * D * beta + 2 * d) / 8
    out["twopc_bytes"] = twopc
    out["twopc_mib"] = twopc / 2**20
    batches = math.ceil(D / (4096 * 5))
    idface = 2 * batches * 135168 + math.ceil(math.log2(D)) / 8
    out["idface_ckks_bytes"] = idface
    out["idface_ckks_mib"] = idface / 2**20
    out["idface_ckks_table_mb"] = idface / 1024 / 1000
    storage = 2 * math.ceil(D / 341) * 512 * 512
    out["storage_paillier_63_bytes"] = storage
    out["storage_paillier_63_table_gb"] = storage / 1024 / 1e6
    out["storage_1e4_bytes"] = 2 * math.ceil(10**4 / 341) * 512 * 512
    # Paillier known answers.
    out["paillier_small"] = {"n": 35, "c(3,r=2)": paillier_encrypt(5, 7, 3, 2), "c(4,r=3)": paillier_encrypt(5, 7, 4, 3)}
    p, q = 1000003, 1000033
    out["paillier_kat"] = {"p": p, "q": q, "m": 123456789, "r": 987654321,
                           "c": paillier_encrypt(p, q, 123456789, 987654321)}
    print(json.dumps(out, indent=2, default=str))


if __name__ == "__main__":
    main()
