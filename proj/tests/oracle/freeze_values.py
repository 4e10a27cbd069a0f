"""Extended-precision reference values frozen into tests/test_bounds.cpp and
tests/test_linalg_oracle.cpp.

Every value is computed from the textbook formula or a dense determinant at
60 significant digits with mpmath, independent of the C++ code paths.
Run: python3 tests/oracle/freeze_values.py
"""
import mpmath as mp

mp.mp.dps = 60


def stable_dev(a, e, n):
    a, e = mp.mpf(a), mp.mpf(e)
    s = (1 + a**2 + e**2) / 2
    return ((1 - a**2) / (1 - a**2 + e**2)) ** mp.mpf(0.25) * (s + mp.sqrt(s**2 - a**2)) ** (-mp.mpf(n - 2) / 4)


def roots(a, e):
    a, e = mp.mpf(a), mp.mpf(e)
    b = 1 + a**2 + e**2
    d = mp.sqrt(b**2 - 4 * a**2)
    return (b - d) / 2, (b + d) / 2


def unstable_dev(a, e, n):
    l1, l2 = roots(a, e)
    return ((l2 - l1) / ((l2 - 1) * l1**n - (l1 - 1) * l2**n)) ** mp.mpf(0.25)


def relaxed(a, e, n, m):
    l1, l2 = roots(a, e)
    return min(mp.mpf(1), l2 ** (-mp.mpf(n) / 4) * ((l2 - l1) / (1 - l1)) ** mp.mpf(m))


def unstable_var(a, n):
    a = mp.mpf(a)
    return abs(a) ** (-mp.mpf(2 * n) / 5) * (
        2 * a**4 * (n + 5) / n + 8 * (mp.mpf(n) / (n + 5)) ** mp.mpf(0.25) * (a**2 / (n - 6) - mp.mpf(1) / (n + 2)))


def det_bound(a, e, n, sigma=1):
    a, e, sigma = mp.mpf(a), mp.mpf(e), mp.mpf(sigma)
    d = n - 1
    m = mp.matrix(d, d)
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if abs(a) < 1:
                r = sigma**2 * a ** abs(i - j) / (1 - a**2)
            else:
                r = sigma**2 * a ** abs(i - j) * (a ** (2 * min(i, j)) - 1) / (a**2 - 1)
            m[i - 1, j - 1] = (1 if i == j else 0) + e**2 / sigma**2 * r
    return mp.det(m) ** mp.mpf(-0.25)


def szego_quad(a, e):
    a, e = mp.mpf(a), mp.mpf(e)
    f = lambda w: mp.log(1 + e**2 / (1 - 2 * a * mp.cos(w) + a**2))
    return mp.quad(f, [0, mp.pi]) / mp.pi


def szego_closed(a, e):
    a, e = mp.mpf(a), mp.mpf(e)
    s = (1 + a**2 + e**2) / 2
    return mp.log(s + mp.sqrt(s**2 - a**2))


def fact4_f(a, n, m):
    a, m = mp.mpf(a), mp.mpf(m)
    x = abs(a) ** (4 - n / (2 * m)) * (n + 4 * m) / n
    z = a**2 + x
    p = n / (4 * m)
    return z ** (p + 1) - a**2 * z**p - z**2 + a**2


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 20)}")


if __name__ == "__main__":
    show("stable_dev(0.5,1,2)", stable_dev(0.5, 1, 2))
    show("stable_dev(0.5,1,10)", stable_dev(0.5, 1, 10))
    l1, l2 = roots(1.01, 0.01)
    show("roots(1.01,0.01).l1", l1)
    show("roots(1.01,0.01).l2", l2)
    show("unstable_dev(1.1,0.5,2)", unstable_dev(1.1, 0.5, 2))
    show("unstable_dev(1.5,1,30)", unstable_dev(1.5, 1, 30))
    show("det_bound(1.5,1,30)", det_bound(1.5, 1, 30))
    show("relaxed(2,0.5,40,1/4)", relaxed(2, 0.5, 40, 0.25))
    show("unstable_var(1.1,7)", unstable_var(1.1, 7))
    show("unstable_var(2,100)", unstable_var(2, 100))
    show("unstable_var(1.01,100)", unstable_var(1.01, 100))
    show("szego_closed(0.8,0.5)", szego_closed(0.8, 0.5))
    show("szego_quad(0.8,0.5)", szego_quad(0.8, 0.5))
    show("fact4_f(1.5,50,5/4)", fact4_f(1.5, 50, 1.25))
    show("det_bound(0.5,1,10)", det_bound(0.5, 1, 10))
    show("det_bound(0.9,1,50)", det_bound(0.9, 1, 50))
