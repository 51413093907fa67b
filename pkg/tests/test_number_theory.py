import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rsa_primer.errors import (
    BitsTooSmall,
    BothZero,
    EqualPrimes,
    ModulusTooSmall,
    NotCoprime,
    NotPrime,
    OracleBoundExceeded,
    ZeroState,
)
from rsa_primer.number_theory import (
    Rng64,
    extended_gcd,
    gcd,
    gen_prime,
    is_congruent,
    is_probable_prime,
    mod_inverse,
    mod_pow,
    mod_reduce,
    rng_next,
    totient_bruteforce,
    totient_of_semiprime,
)

naturals = st.integers(min_value=0, max_value=10**12)
moduli = st.integers(min_value=2, max_value=10**9)


def sieve_is_prime(limit):
    """Independent primality oracle: plain sieve of Eratosthenes."""
    flags = [True] * limit
    flags[0] = flags[1] = False
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            for j in range(i * i, limit, i):
                flags[j] = False
    return flags


class TestModReduce:
    def test_worked_examples(self):
        assert mod_reduce(7, 3) == 1
        assert mod_reduce(5, 9) == 5
        assert mod_reduce(0, 17) == 0

    @pytest.mark.parametrize("n", [0, 1])
    def test_rejects_tiny_modulus(self, n):
        with pytest.raises(ModulusTooSmall):
            mod_reduce(5, n)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            mod_reduce(-1, 5)

    @given(a=naturals, n=moduli)
    def test_euclidean_division(self, a, n):
        r = mod_reduce(a, n)
        assert 0 <= r < n
        assert a == n * (a // n) + r

    @given(a=naturals, n=moduli)
    def test_small_values_unchanged(self, a, n):
        if a < n:
            assert mod_reduce(a, n) == a


class TestIsCongruent:
    def test_worked_example(self):
        assert is_congruent(24, 14, 5)

    def test_distinct_residues(self):
        assert not is_congruent(3, 4, 5)

    @given(a=naturals, m=moduli)
    def test_reflexive(self, a, m):
        assert is_congruent(a, a, m)

    @given(a=naturals, j=st.integers(0, 50), k=naturals, m=st.integers(2, 10**6))
    def test_scaling_and_powers_preserve_congruence(self, a, j, k, m):
        # congruent pairs stay congruent under *k and ^k
        b = a + j * m
        assert is_congruent(a, b, m)
        assert is_congruent(a * k, b * k, m)
        assert is_congruent(mod_pow(a, k, m), mod_pow(b, k, m), m)

    def test_rejects_tiny_modulus(self):
        with pytest.raises(ModulusTooSmall):
            is_congruent(1, 1, 1)


class TestModPow:
    def test_worked_examples(self):
        assert mod_pow(2, 113, 143) == 19
        assert mod_pow(19, 17, 143) == 2
        assert mod_pow(84, 1012333, 3099521) == 469428

    @pytest.mark.parametrize("x", [0, 1, 2, 7, 10**30])
    def test_zero_exponent(self, x):
        assert mod_pow(x, 0, 97) == 1

    def test_rejects_tiny_modulus(self):
        with pytest.raises(ModulusTooSmall):
            mod_pow(2, 3, 1)

    def test_matches_naive_oracle_exhaustively(self):
        # oracle: iterated multiplication, no exponentiation shortcut
        for n in range(2, 1000):
            for base in range(32):
                acc = 1 % n
                for exponent in range(32):
                    assert mod_pow(base, exponent, n) == acc
                    acc = acc * base % n

    def test_handles_4096_bit_operands(self):
        rnd = random.Random(4096)
        n = rnd.getrandbits(4096) | (1 << 4095) | 1
        base = rnd.getrandbits(4096)
        exponent = rnd.getrandbits(4096)
        assert mod_pow(base, exponent, n) == pow(base, exponent, n)

    def test_euler_theorem_spot_case(self):
        assert totient_bruteforce(4) == 2
        assert mod_pow(3, totient_bruteforce(4), 4) == 1


class TestGcd:
    def test_worked_example(self):
        # Euclid chain: 24 -> 14 -> 10 -> 4 -> 2
        assert gcd(24, 14) == 2

    def test_base_cases(self):
        assert gcd(7, 0) == 7
        assert gcd(0, 7) == 7
        assert gcd(7, 11) == 1

    def test_both_zero(self):
        with pytest.raises(BothZero):
            gcd(0, 0)

    @given(a=naturals, b=naturals)
    def test_matches_stdlib(self, a, b):
        if a == 0 and b == 0:
            return
        assert gcd(a, b) == math.gcd(a, b)


class TestExtendedGcd:
    def test_worked_example_coefficients(self):
        assert extended_gcd(24, 14) == (2, 3, -5)
        assert 3 * 24 + (-5) * 14 == 2

    def test_base_case(self):
        assert extended_gcd(7, 0) == (7, 1, 0)

    def test_coprime_pair_identity(self):
        g, s, t = extended_gcd(17, 5)
        assert g == 1
        assert s * 17 + t * 5 == 1

    def test_both_zero(self):
        with pytest.raises(BothZero):
            extended_gcd(0, 0)

    @given(a=st.integers(0, 10**9), b=st.integers(0, 10**9))
    def test_bezout_identity(self, a, b):
        if a == 0 and b == 0:
            return
        g, s, t = extended_gcd(a, b)
        assert g == math.gcd(a, b)
        assert s * a + t * b == g


class TestModInverse:
    def test_worked_examples(self):
        assert mod_inverse(1012333, 3096000) == 997
        assert mod_inverse(113, 120) == 17
        assert 113 * 17 % 120 == 1

    @given(m=st.integers(2, 10**9))
    def test_identity(self, m):
        assert mod_inverse(1, m) == 1

    @given(a=st.integers(1, 10**9), m=st.integers(2, 10**9))
    def test_inverse_correct_exactly_when_coprime(self, a, m):
        if math.gcd(a, m) == 1:
            b = mod_inverse(a, m)
            assert 0 < b < m
            assert a * b % m == 1
        else:
            with pytest.raises(NotCoprime):
                mod_inverse(a, m)

    def test_rejects_tiny_modulus(self):
        with pytest.raises(ModulusTooSmall):
            mod_inverse(3, 1)


class TestTotientOfSemiprime:
    def test_worked_examples(self):
        assert totient_of_semiprime(1721, 1801) == 3096000
        assert totient_of_semiprime(11, 13) == 120
        assert totient_of_semiprime(2, 3) == 2

    def test_rejects_composite(self):
        with pytest.raises(NotPrime):
            totient_of_semiprime(12, 13)

    def test_rejects_equal_primes(self):
        with pytest.raises(EqualPrimes):
            totient_of_semiprime(11, 11)

    @pytest.mark.parametrize("p,q", [(3, 5), (5, 7), (101, 211), (1721, 1801)])
    def test_matches_bruteforce(self, p, q):
        assert totient_of_semiprime(p, q) == totient_bruteforce(p * q)


class TestTotientBruteforce:
    def test_worked_examples(self):
        assert totient_bruteforce(8) == 4
        assert totient_bruteforce(6) == 2

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 97, 7919])
    def test_primes(self, p):
        assert totient_bruteforce(p) == p - 1

    def test_bound(self):
        with pytest.raises(OracleBoundExceeded):
            totient_bruteforce(10**7 + 1)

    def test_rejects_unit(self):
        with pytest.raises(ValueError):
            totient_bruteforce(1)

    def test_multiplicative_spot_check(self):
        for m in range(2, 40):
            for n in range(2, 40):
                if math.gcd(m, n) == 1:
                    assert totient_bruteforce(m * n) == (
                        totient_bruteforce(m) * totient_bruteforce(n)
                    )


class TestIsProbablePrime:
    def test_worked_examples(self):
        assert is_probable_prime(1721)
        assert not is_probable_prime(1)
        assert not is_probable_prime(3099521)

    def test_small_values(self):
        assert not is_probable_prime(0)
        assert is_probable_prime(2)
        assert is_probable_prime(3)

    def test_carmichael_number(self):
        assert not is_probable_prime(561)

    def test_strong_pseudoprime_to_few_bases(self):
        # composite that fools bases {2,3,5,7}; the full witness set must not
        assert 3215031751 == 151 * 751 * 28351
        assert not is_probable_prime(3215031751)

    def test_semiprime_with_no_small_factors(self):
        # survives the trial-division screen, so Miller-Rabin must reject it
        assert is_probable_prime(65537) and is_probable_prime(65539)
        assert not is_probable_prime(65537 * 65539)

    def test_matches_sieve_oracle(self):
        limit = 100000
        flags = sieve_is_prime(limit)
        for n in range(limit):
            assert is_probable_prime(n) == flags[n], n

    def test_large_prime_uses_random_witnesses(self):
        mersenne_127 = (1 << 127) - 1  # prime, above the deterministic bound
        assert is_probable_prime(mersenne_127)
        assert is_probable_prime(mersenne_127, Rng64(99))
        assert not is_probable_prime(mersenne_127 * ((1 << 89) - 1))


class TestRng64:
    def test_known_step_from_state_one(self):
        # hand-evaluated: 1 -> ^>>12 keeps 1 -> ^<<25 gives 0x2000001 ->
        # ^>>27 keeps it; output = 0x2000001 * 0x2545F4914F6CDD1D mod 2^64
        value, rng = rng_next(Rng64(1))
        assert rng.state == 0x2000001
        assert value == (0x2000001 * 0x2545F4914F6CDD1D) % (1 << 64)
        assert value == 5180492295206395165

    def test_pure_and_repeatable(self):
        rng = Rng64(123456789)
        v1, r1 = rng_next(rng)
        v2, r2 = rng_next(rng)
        assert (v1, r1.state) == (v2, r2.state)
        assert rng.state == 123456789  # input untouched

    def test_state_always_changes(self):
        rnd = random.Random(0)
        for _ in range(10**4):
            state = rnd.getrandbits(64) or 1
            _, advanced = rng_next(Rng64(state))
            assert advanced.state != state
            assert advanced.state != 0

    def test_zero_state_rejected(self):
        with pytest.raises(ZeroState):
            Rng64(0)

    def test_oversized_state_rejected(self):
        with pytest.raises(ValueError):
            Rng64(1 << 64)


class TestGenPrime:
    def test_deterministic(self):
        assert gen_prime(8, Rng64(42)) == gen_prime(8, Rng64(42))

    def test_eight_bit_primes(self):
        eight_bit_primes = {
            n for n in range(128, 256) if all(n % d for d in range(2, n))
        }
        for seed in range(1, 60):
            p = gen_prime(8, Rng64(seed))
            assert p in eight_bit_primes

    def test_four_bit_primes(self):
        for seed in range(1, 200):
            assert gen_prime(4, Rng64(seed)) in {11, 13}

    def test_exact_width(self):
        for bits in (4, 8, 16, 32, 64, 128):
            p = gen_prime(bits, Rng64(7))
            assert p.bit_length() == bits
            assert is_probable_prime(p)

    def test_rejects_tiny_width(self):
        with pytest.raises(BitsTooSmall):
            gen_prime(3, Rng64(1))

    def test_advances_the_stream(self):
        rng = Rng64(5)
        first = gen_prime(16, rng)
        second = gen_prime(16, rng)
        assert first != second
