#!/usr/bin/env python3
"""Independent big-integer oracle for the keyspace fixtures.

Uses only Python's built-in integers and math.comb/math.factorial; shares no
code with the Rust implementation. Regenerate the fixture with:

    python3 keyspace_oracle.py > ../fixtures/keyspace_oracle.tsv
"""
from math import comb, factorial


def pairings(n, p):
    # choose 2p sockets, then pair them: (2p-1)(2p-3)...1
    odd = 1
    for k in range(1, 2 * p, 2):
        odd *= k
    return comb(n, 2 * p) * odd


def main():
    f26 = factorial(26)
    rows = []
    for p in range(14):
        rows.append((f"plugboard_p{p}", pairings(26, p)))
    plug_total = sum(pairings(26, p) for p in range(14))
    rows.append(("plugboard_total", plug_total))
    rows.append(("factorial_26", f26))
    reflector = pairings(26, 13)
    rows.append(("reflector_wirings", reflector))
    order3 = f26 * (f26 - 1) * (f26 - 2)
    rows.append(("rotor_order_army", order3))
    order4 = order3 * f26
    rows.append(("rotor_order_naval", order4))
    army = plug_total * order3 * 26**3 * 26**2 * reflector
    naval = plug_total * order4 * 26**4 * 26**4 * reflector
    oper = pairings(26, 10) * (5 * 4 * 3) * 26**3 * 26**2 * 1
    rows.append(("army_product", army))
    rows.append(("naval_product", naval))
    rows.append(("operational_product", oper))
    for name, value in rows:
        print(f"{name}\t{value}")


if __name__ == "__main__":
    main()
