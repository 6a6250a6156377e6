"""Prime fields GF(p)."""
import random

from .errors import NonPrimeCharacteristic

DEFAULT_CHARACTERISTIC = 32003


def is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field Z/pZ. Elements are plain ints in ``range(p)``."""

    __slots__ = ("p",)

    def __init__(self, characteristic=DEFAULT_CHARACTERISTIC):
        if not isinstance(characteristic, int) or not is_prime(characteristic):
            raise NonPrimeCharacteristic(f"{characteristic!r} is not prime")
        self.p = characteristic

    @property
    def characteristic(self):
        return self.p

    def __call__(self, a):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def random_element(self, rng=random):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"
