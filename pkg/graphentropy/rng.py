"""
Seeded 64-bit PRNG used by every graph generator.

xorshift64* with the state initialised by one SplitMix64 step of the seed.
The update, output and derivation rules below are fixed so that a given
(spec, seed) pair maps to the same graph on every platform:

    state  = splitmix64(seed)
    x ^= x >> 12; x ^= x << 25; x ^= x >> 27
    out    = x * 0x2545F4914F6CDD1D  (mod 2**64)
    float  = (out >> 11) * 2**-53
    int<k  = (out * k) >> 64
"""

from .exceptions import DomainError

MASK64 = (1 << 64) - 1
SPLITMIX_INCREMENT = 0x9E3779B97F4A7C15
XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D
# any non-zero constant works; splitmix64 maps exactly one seed to zero
ZERO_STATE_REPLACEMENT = SPLITMIX_INCREMENT


def splitmix64(seed: int) -> int:
    z = (seed + SPLITMIX_INCREMENT) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Seed of the index-th ensemble member"""
    return (seed + index) & MASK64


class Xorshift64Star:
    __slots__ = ('_state',)

    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise DomainError(f"Seed must be a 64-bit unsigned integer, got {seed}")
        state = splitmix64(seed)
        self._state = state or ZERO_STATE_REPLACEMENT

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self._state = x
        return (x * XORSHIFT_MULTIPLIER) & MASK64

    def random(self) -> float:
        """Uniform float in [0, 1)"""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def below(self, k: int) -> int:
        """Uniform integer in [0, k)"""
        if k <= 0:
            raise ValueError("Upper bound must be positive")
        return (self.next_u64() * k) >> 64
