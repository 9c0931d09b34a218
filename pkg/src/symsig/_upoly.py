"""Dense univariate polynomials as coefficient lists, lowest degree first.

Coefficients are any exact field elements supporting ``+ - * /`` and
comparison with ``0``; plain ints are promoted to ``mpq`` before inversion.
The zero polynomial is the empty list.
"""

from gmpy2 import mpq


def _inv(c):
    if isinstance(c, int):
        return mpq(1, c)
    return 1 / c


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out)


def neg(a):
    return [-c for c in a]


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    return trim([c * x for x in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_(a, b):
    """Quotient and remainder of ``a`` by nonzero ``b``."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(a)
    db = len(b) - 1
    inv = _inv(b[-1])
    if len(r) <= db:
        return [], r
    q = [b[-1] * 0] * (len(r) - db)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1] * inv
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = r[i + shift] - c * y
        r = trim(r)
    return trim(q), r


def monic(a):
    a = trim(a)
    if not a:
        return a
    inv = _inv(a[-1])
    return [c * inv for c in a]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def lcm(a, b):
    g = gcd(a, b)
    q, r = divmod_(mul(a, b), g)
    assert not r
    return monic(q)


def series_inverse(a, n):
    """First ``n`` coefficients of ``1/a`` for ``a[0]`` invertible."""
    inv0 = _inv(a[0])
    out = []
    for k in range(n):
        acc = 1 if k == 0 else 0
        for j in range(1, min(k, len(a) - 1) + 1):
            acc = acc - a[j] * out[k - j]
        out.append(acc * inv0)
    return out


def to_string(c, var="t"):
    """Human form such as ``1 - 2*t^2 + t^4``."""
    parts = []
    for k, a in enumerate(c):
        if not a:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = -a if a < 0 else a
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        parts.append(("-" if a < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
