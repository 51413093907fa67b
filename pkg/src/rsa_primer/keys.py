"""RSA key generation, validation, and the flat key file format.

A key pair is built the textbook way: two distinct random primes p and q,
n = p*q, phi = (p-1)*(q-1), a public exponent e coprime to phi, and
d the inverse of e modulo phi.  The factors and phi are dropped by default
("destroyed"); pass ``retain_provenance=True`` to keep them for teaching
output and deeper validation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    EqualPrimes,
    InvalidPublicExponent,
    MalformedKeyFile,
    NotPrime,
)
from .number_theory import (
    Rng64,
    _draw_bits,
    gcd,
    gen_prime,
    is_probable_prime,
    mod_inverse,
    mod_pow,
)

__all__ = [
    "PublicKey",
    "PrivateKey",
    "Provenance",
    "KeyPair",
    "generate_keypair",
    "keypair_from_primes",
    "validate_keypair",
    "format_public_key",
    "format_private_key",
    "format_keypair",
    "parse_key_file",
    "public_part",
    "private_part",
]


@dataclass(frozen=True)
class PublicKey:
    e: int
    n: int


@dataclass(frozen=True)
class PrivateKey:
    d: int
    n: int


@dataclass(frozen=True)
class Provenance:
    """The secrets behind a key pair: factors of n and the totient."""

    p: int
    q: int
    phi: int


@dataclass(frozen=True)
class KeyPair:
    public: PublicKey
    private: PrivateKey
    provenance: Provenance | None = None


def _check_exponent(e: int, phi: int) -> None:
    if not 1 < e < phi:
        raise InvalidPublicExponent(f"e must satisfy 1 < e < {phi}, got {e}")
    g = gcd(e, phi)
    if g != 1:
        raise InvalidPublicExponent(f"gcd(e, phi) = gcd({e}, {phi}) = {g} != 1")


def _draw_exponent(phi: int, rng: Rng64) -> int:
    # Rejection-sample odd values in [3, phi) until one is coprime to phi.
    # phi is even for odd primes p, q, so restricting to odd loses nothing.
    width = phi.bit_length()
    while True:
        e = _draw_bits(width, rng) | 1
        if 3 <= e < phi and gcd(e, phi) == 1:
            return e


def _assemble(p: int, q: int, e: int, retain_provenance: bool) -> KeyPair:
    n = p * q
    phi = (p - 1) * (q - 1)
    _check_exponent(e, phi)
    d = mod_inverse(e, phi)
    provenance = Provenance(p, q, phi) if retain_provenance else None
    return KeyPair(PublicKey(e, n), PrivateKey(d, n), provenance)


def generate_keypair(
    bits_per_prime: int,
    seed: int,
    e: int | None = None,
    retain_provenance: bool = False,
) -> KeyPair:
    """Generate a key pair deterministically from a nonzero 64-bit seed.

    p and q are drawn at exactly ``bits_per_prime`` bits, q redrawn until it
    differs from p.  With ``e=None`` the public exponent is drawn as a
    uniform odd value in [3, phi) until coprime to phi (no bias toward
    large values); a caller-fixed ``e`` is validated instead and raises
    :class:`InvalidPublicExponent` when unusable.
    """
    rng = Rng64(seed)
    p = gen_prime(bits_per_prime, rng)
    q = gen_prime(bits_per_prime, rng)
    while q == p:
        q = gen_prime(bits_per_prime, rng)
    if e is None:
        e = _draw_exponent((p - 1) * (q - 1), rng)
    return _assemble(p, q, e, retain_provenance)


def keypair_from_primes(
    p: int, q: int, e: int, retain_provenance: bool = False
) -> KeyPair:
    """Build a key pair from explicit primes, with no randomness involved."""
    if not is_probable_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if not is_probable_prime(q):
        raise NotPrime(f"q = {q} is not prime")
    if p == q:
        raise EqualPrimes(f"p and q must be distinct, both are {p}")
    return _assemble(p, q, e, retain_provenance)


def validate_keypair(kp: KeyPair) -> list[str]:
    """Check key pair consistency; an empty findings list means valid.

    With provenance the arithmetic relations are checked directly
    (primality of p and q, n = p*q, phi = (p-1)(q-1), e*d = 1 mod phi).
    Without it the only observable contract is the cipher itself, so
    encrypt-then-decrypt is probed on fixed values {2, 3, n-2}.
    """
    findings: list[str] = []
    pub, priv = kp.public, kp.private
    if pub.n != priv.n:
        findings.append("modulus mismatch between public and private halves")
        return findings
    if pub.n <= 1:
        findings.append("modulus must exceed 1")
        return findings
    if kp.provenance is not None:
        p, q, phi = kp.provenance.p, kp.provenance.q, kp.provenance.phi
        if not is_probable_prime(p):
            findings.append(f"p = {p} is not prime")
        if not is_probable_prime(q):
            findings.append(f"q = {q} is not prime")
        if p == q:
            findings.append("p and q are equal")
        if p * q != pub.n:
            findings.append("n does not equal p*q")
        if (p - 1) * (q - 1) != phi:
            findings.append("phi does not equal (p-1)*(q-1)")
        if phi > 1 and (pub.e * priv.d) % phi != 1:
            findings.append("inverse check failed: (e*d) mod phi != 1")
    else:
        for probe in (2, 3, pub.n - 2):
            m = probe % pub.n
            if mod_pow(mod_pow(m, pub.e, pub.n), priv.d, priv.n) != m:
                findings.append(f"round trip failed for probe {m}")
    return findings


# --- key file format ---------------------------------------------------------
#
# Line 1:  rsa-primer <public|private|pair> v1
# Then, in this order, one `name=<decimal>` per line:
#   public:  n, e
#   private: n, d
#   pair:    n, e, d, and optionally the provenance trio p, q, phi
# Every line ends with \n; no other whitespace is tolerated.

_HEADER_RE = re.compile(r"^rsa-primer (public|private|pair) v1$")
_FIELD_RE = re.compile(r"^([a-z]+)=([0-9]+)$")

_FIELDS_BY_KIND = {
    "public": ("n", "e"),
    "private": ("n", "d"),
    "pair": ("n", "e", "d"),
}
_PROVENANCE_FIELDS = ("p", "q", "phi")


def format_public_key(pk: PublicKey) -> str:
    return f"rsa-primer public v1\nn={pk.n}\ne={pk.e}\n"


def format_private_key(sk: PrivateKey) -> str:
    return f"rsa-primer private v1\nn={sk.n}\nd={sk.d}\n"


def format_keypair(kp: KeyPair) -> str:
    text = f"rsa-primer pair v1\nn={kp.public.n}\ne={kp.public.e}\nd={kp.private.d}\n"
    if kp.provenance is not None:
        pr = kp.provenance
        text += f"p={pr.p}\nq={pr.q}\nphi={pr.phi}\n"
    return text


def parse_key_file(text: str) -> PublicKey | PrivateKey | KeyPair:
    """Parse a key file, enforcing the format bit-exactly."""
    if not text.endswith("\n"):
        raise MalformedKeyFile("key file must end with a newline")
    lines = text.split("\n")[:-1]
    if not lines:
        raise MalformedKeyFile("key file is empty")
    header = _HEADER_RE.match(lines[0])
    if header is None:
        raise MalformedKeyFile(f"unrecognized header line: {lines[0]!r}")
    kind = header.group(1)

    expected = _FIELDS_BY_KIND[kind]
    body = lines[1:]
    if kind == "pair" and len(body) == len(expected) + len(_PROVENANCE_FIELDS):
        expected = expected + _PROVENANCE_FIELDS
    if len(body) != len(expected):
        raise MalformedKeyFile(
            f"{kind} key file needs fields {expected}, got {len(body)} lines"
        )
    values: dict[str, int] = {}
    for line, name in zip(body, expected):
        field = _FIELD_RE.match(line)
        if field is None or field.group(1) != name:
            raise MalformedKeyFile(f"expected {name}=<decimal>, got {line!r}")
        values[name] = int(field.group(2))

    if kind == "public":
        return PublicKey(e=values["e"], n=values["n"])
    if kind == "private":
        return PrivateKey(d=values["d"], n=values["n"])
    provenance = None
    if "p" in values:
        provenance = Provenance(values["p"], values["q"], values["phi"])
    return KeyPair(
        PublicKey(e=values["e"], n=values["n"]),
        PrivateKey(d=values["d"], n=values["n"]),
        provenance,
    )


def public_part(key: PublicKey | PrivateKey | KeyPair) -> PublicKey:
    """The public half of any parsed key object, if it has one."""
    if isinstance(key, PublicKey):
        return key
    if isinstance(key, KeyPair):
        return key.public
    raise MalformedKeyFile("a public key is required (got a private-only file)")


def private_part(key: PublicKey | PrivateKey | KeyPair) -> PrivateKey:
    """The private half of any parsed key object, if it has one."""
    if isinstance(key, PrivateKey):
        return key
    if isinstance(key, KeyPair):
        return key.private
    raise MalformedKeyFile("a private key is required (got a public-only file)")
