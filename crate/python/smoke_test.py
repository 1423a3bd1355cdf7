"""Smoke test for the schurcodes Python extension.

Build and install first, e.g. `maturin build --release` in crates/py and
`pip install` the wheel, then run `python python/smoke_test.py`.
"""

import schurcodes as sc


def main():
    f = sc.Field(49)
    assert repr(f) == "GF 7 2 1 0 1"
    assert f.mul(f.inv(5), 5) == 1

    # closure attack on a subcode of a Hermitian code
    spec = sc.HermitianSpec(3, 10)
    assert (spec.n, spec.genus) == (27, 3)
    code = spec.code()
    assert code.dim == 8
    assert code.square() == spec.with_degree(20).code()
    assert code.closure(2) == code

    pk, sk = sc.keygen(spec, 6, seed=3)
    msg = [1, 2, 3, 4, 5, 6]
    ct = sc.encrypt(pk, msg, seed=11)
    assert sc.decrypt(sk, ct) == msg

    report = sc.distinguish(pk.code())
    assert report.verdict == "algebraic-like"
    recovered, degenerate = sc.attack_recover_code(pk.code())
    assert not degenerate and recovered == code

    dec = sc.hermitian_full_attack(pk, spec)
    assert dec.decrypt(ct) == msg

    # genus zero: key recovery from the public subcode alone
    g = sc.GrsSpec.random(sc.Field(61), 60, 20, seed=1)
    pk, sk = sc.keygen(g, 10, seed=1)
    assert pk.t == 20
    msg = list(range(10))
    ct = sc.encrypt(pk, msg, seed=5)
    dec = sc.grs_full_attack(pk)
    assert dec.decrypt(ct) == msg
    assert dec.recovered_code() == g.code()

    assert sc.PublicKey.from_text(pk.to_text()).to_text() == pk.to_text()
    try:
        sc.Field(6)
    except ValueError:
        pass
    else:
        raise AssertionError("GF(6) accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
