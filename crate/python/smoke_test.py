"""Smoke test for the pychevalley extension module."""

import pychevalley as pc

Q = pc.NumberFieldProfile.rationals()
SQRT2 = pc.NumberFieldProfile.parse("deg=2,r1=2,r2=0,label=Q(sqrt2)")


def main():
    c2 = pc.CartanType("C", 2)
    assert str(c2) == "C_2" and c2.rank == 2
    assert pc.CartanType.parse("D4").center() == [2, 2]
    assert pc.CartanType.parse("E6").dynkin_symmetry_order() == 2
    assert pc.CartanType.parse("G2").cartan_matrix() == [[2, -3], [-1, 2]]

    assert SQRT2.degree == 2 and SQRT2.local_determinacy() == "yes"
    assert not pc.finite_splitting_principle(pc.CartanType.parse("B3"), Q)
    assert pc.ker_b(c2, pc.NumberFieldProfile(3, 0))["total_count"] == 4

    report = pc.classify(c2, SQRT2)
    assert report["outcome"] == "NotSolitary", report
    assert report["witness"] == "Sp(1,1) at both real places, split at finite places"
    assert pc.enumerate_ker_g(c2, SQRT2) == [["Sp(4,R)", "Sp(4,R)"], ["Sp(1,1)", "Sp(1,1)"]]

    f4 = pc.CartanType.parse("F4")
    assert pc.classify(f4, Q)["outcome"] == "CSPConditional"
    assert pc.classify(f4, Q, policy_f4="false")["outcome"] == "SolitaryOrNotGrothendieckRigid"
    assert pc.witness_group(pc.CartanType.parse("B5"), Q) == "Spin(2,9) over Q"
    try:
        pc.witness_group(pc.CartanType.parse("A2"), Q)
    except ValueError:
        pass
    else:
        raise AssertionError("witness_group should reject a solitary verdict")
    assert pc.cross_validate(pc.CartanType.parse("D6"), Q)

    assert pc.hilbert_symbol(-1, -1) == -1
    assert pc.hilbert_symbol(-1, -1, 2) == -1
    assert pc.hilbert_symbol("2/3", 5, 3) == -1
    assert pc.qform_check("1,1,1,1", "-1,-1,-1,-1") == (True, False)

    results = pc.examples()
    assert len(results) == 29 and all(r["pass"] for r in results)
    print(f"pychevalley smoke test passed ({len(results)} examples)")


if __name__ == "__main__":
    main()
