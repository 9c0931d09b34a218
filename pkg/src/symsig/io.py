"""Ring, ideal and group files.

All three are small YAML documents::

    # ring
    variables: [x, y, z, w]
    char: 0                 # optional, prime p for F_p
    cyclotomic_order: 3     # optional, QQ(zeta_m); the symbol z is zeta

    # ideal: ring keys plus
    ideal: ["x1*x5 - x2*x4", "x1*x6 - x3*x4"]

    # group
    n: 2
    cyclotomic_order: 3     # optional; omit for rational matrices
    generators:
      - [["z", 0], [0, "z^2"]]
"""

import hashlib

import yaml

from .errors import InputError
from .fields import QQ, CyclotomicField, is_prime
from .groebner import Ideal
from .invariants import DEFAULT_CAP, group_closure
from .poly import PolyRing, ring_from_description

_ZETA_RING = PolyRing(["z"], QQ)


def sha256_bytes(data):
    return hashlib.sha256(data).hexdigest()


def sha256_file(path):
    with open(path, "rb") as fh:
        return sha256_bytes(fh.read())


def load_document(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except yaml.YAMLError as exc:
        raise InputError(f"{path}: malformed document ({exc})") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a mapping at top level")
    return doc


def _require(doc, key, path):
    if key not in doc:
        raise InputError(f"{path}: missing key {key!r}")
    return doc[key]


def ring_from_document(doc, path="<ring>", char=None):
    variables = _require(doc, "variables", path)
    if isinstance(variables, str):
        variables = variables.replace(",", " ").split()
    if not isinstance(variables, list) or not variables:
        raise InputError(f"{path}: 'variables' must be a nonempty list")
    desc = {"variables": [str(v) for v in variables],
            "char": int(doc.get("char", 0) or 0),
            "order": doc.get("order", "grevlex")}
    if doc.get("cyclotomic_order") is not None:
        desc["cyclotomic_order"] = int(doc["cyclotomic_order"])
    if char is not None:
        desc["char"] = int(char)
    if desc["char"] and not is_prime(desc["char"]):
        raise InputError(f"characteristic {desc['char']} is not prime")
    return ring_from_description(desc)


def load_ring(path, char=None):
    return ring_from_document(load_document(path), path, char)


def load_ideal(path, char=None):
    doc = load_document(path)
    ring = ring_from_document(doc, path, char)
    gens = _require(doc, "ideal", path)
    if isinstance(gens, str):
        gens = [gens]
    if not isinstance(gens, list):
        raise InputError(f"{path}: 'ideal' must be a list of polynomials")
    return ring, Ideal(ring, [ring(str(g)) for g in gens])


def parse_group_entry(value, fld):
    """A matrix entry: a number or a polynomial expression in ``z``."""
    p = _ZETA_RING(str(value))
    coeffs = {e[0]: c for e, c in p.as_dict().items()}
    if isinstance(fld, CyclotomicField):
        top = max(coeffs, default=0)
        return fld.from_coefficients([coeffs.get(k, 0) for k in range(top + 1)])
    if any(k for k in coeffs):
        raise InputError(f"entry {value!r} uses z but the group file declares no cyclotomic_order")
    return coeffs.get(0, QQ.zero)


def group_from_document(doc, path="<group>", cap=DEFAULT_CAP):
    n = int(_require(doc, "n", path))
    m = doc.get("cyclotomic_order")
    fld = CyclotomicField(int(m)) if m is not None else QQ
    gens = _require(doc, "generators", path)
    if not isinstance(gens, list) or not gens:
        raise InputError(f"{path}: 'generators' must be a nonempty list of matrices")
    mats = []
    for g in gens:
        if not isinstance(g, list) or len(g) != n or any(not isinstance(r, list) or len(r) != n for r in g):
            raise InputError(f"{path}: every generator must be an {n}x{n} nested list")
        mats.append([[parse_group_entry(x, fld) for x in row] for row in g])
    return group_closure(mats, fld, cap=cap)


def load_group(path, cap=DEFAULT_CAP):
    return group_from_document(load_document(path), path, cap)
