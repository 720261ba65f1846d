#!/usr/bin/env python3
"""Independent pixel-summation derivation of the ellipse test constants.

Renders a solid ellipse (semi-axes 0.8 x 0.4) and a hollow ring (outer
0.8 x 0.4, inner 0.6 x 0.3) on a 128x128 grid mapped to [-1, 1]^2 and
accumulates the inertia sums with plain Python floats (IEEE doubles),
row-major, the same operation order the C++ kernels use.  The printed
values are frozen into tests/acceptance_main.cpp.

Run:  python3 tools/ellipse_constants.py
"""

import math

W = H = 128


def grid():
    xs = [-1.0 + 2.0 * q / (W - 1) for q in range(W)]
    ys = [1.0 - 2.0 * p / (H - 1) for p in range(H)]
    return xs, ys


def inside(x, y, ax, ay):
    u = x / ax
    v = y / ay
    return u * u + v * v <= 1.0


def render(mask_fn, value=255.0):
    xs, ys = grid()
    return [[value if mask_fn(xs[q], ys[p]) else 0.0 for q in range(W)]
            for p in range(H)]


def tensor(img):
    xs, ys = grid()
    i00 = i01 = i11 = mass = 0.0
    for p in range(H):
        y = ys[p]
        for q in range(W):
            x = xs[q]
            m = img[p][q]
            i00 += m * (y * y)
            i01 -= m * (x * y)
            i11 += m * (x * x)
            mass += m
    return i00, i01, i11, mass


def eigen(i00, i01, i11):
    mean = 0.5 * (i00 + i11)
    half_diff = 0.5 * (i00 - i11)
    radius = math.sqrt(half_diff * half_diff + i01 * i01)
    return mean + radius, mean - radius


def report(name, img):
    i00, i01, i11, mass = tensor(img)
    l1, l2 = eigen(i00, i01, i11)
    count = sum(1 for row in img for v in row if v != 0.0)
    print(f"{name}:")
    print(f"  pixels inside = {count}")
    print(f"  i00   = {i00!r}")
    print(f"  i01   = {i01!r}")
    print(f"  i11   = {i11!r}")
    print(f"  l1    = {l1!r}")
    print(f"  l2    = {l2!r}")
    print(f"  delta = {l1 - l2!r}")
    print(f"  mass  = {mass!r}")
    return l1, l2, l1 - l2, mass


solid = render(lambda x, y: inside(x, y, 0.8, 0.4))
hollow = render(lambda x, y: inside(x, y, 0.8, 0.4) and not inside(x, y, 0.6, 0.3))

s = report("solid ellipse 0.8 x 0.4", solid)
h = report("hollow ring outer 0.8 x 0.4 inner 0.6 x 0.3", hollow)

assert s[2] > h[2], "solid asymmetry must exceed hollow asymmetry"
assert s[3] > h[3], "solid mass must exceed hollow mass"
print("ordering: solid delta > hollow delta and solid mass > hollow mass OK")
