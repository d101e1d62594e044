#!/usr/bin/env python3
"""Factor orders: the least odd prime above 2^(n+1), cross-checked slowly.

Each cyclic factor Z_{p_n} of the ambient free product gets its order from
this rule.  The gap to the next power of two (Bertrand) keeps all orders
distinct automatically, and leaves room for the exponent pools {1..2^n}.
"""

from math import isqrt

from freelac import FactorTable, smallest_admissible_prime


def slow_is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, isqrt(n) + 1))


def main():
    print("=" * 64)
    print("  factor orders p_n = least odd prime > 2^(n+1)")
    print("=" * 64)
    print(f"{'n':>3} {'2^(n+1)':>12} {'p_n':>12} {'gap':>6} {'pool 2^n':>12}")
    for n in range(1, 17):
        threshold = 2 ** (n + 1)
        p = smallest_admissible_prime(n)
        assert slow_is_prime(p), p
        print(f"{n:>3} {threshold:>12} {p:>12} {p - threshold:>6} {2**n:>12}")

    table = FactorTable.paper_default(16)
    assert len(set(table.orders)) == 16
    print("\nall 16 orders are distinct odd primes (trial division agrees)")

    try:
        smallest_admissible_prime(63)
    except OverflowError as exc:
        print(f"width guard: {exc}")


if __name__ == "__main__":
    main()
