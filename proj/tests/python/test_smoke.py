import json

import pytest

import pcsp_topo as pt


def test_homomorphisms_ott_lo3():
    homs = pt.homomorphisms(pt.ott(), pt.lo(3))
    assert len(homs) == 15
    assert [2, 1, 1] in homs


def test_binary_polymorphisms():
    polys = pt.polymorphisms(pt.lo(3), pt.lo(4), 2)
    assert len(polys) == 68
    assert all(len(p) == 9 for p in polys)


def test_reconfiguration():
    g = pt.reconfiguration(2)
    assert g["components"] == 2
    chis = {pt.chi_binary(v) for v in g["vertices"]}
    assert chis == {1, 2}
    path = pt.reduce_to_unary(g["vertices"][-1])
    assert len(path) >= 1


def test_minion():
    assert [2, 2] in pt.subminion_closure([[1, 1, 2]], 2)
    assert pt.affine_minor([1, 1, 2], 2, [1, 1, 2]) == [2, 2]


def test_homology():
    assert pt.hom_complex_homology(pt.ott(), pt.lo(3)) == [(1, []), (4, []), (0, [])]
    assert pt.l4_homology()[2] == (8, [])
    assert pt.h2_omega_matrix() == [[0, -1], [1, -1]]


def test_bredon():
    assert pt.bredon_cohomology(3, "M", 2) == (0, [3, 3])
    assert pt.bredon_cohomology(3, "M", 2, "first-coordinate") == (0, [3, 3])
    assert pt.pstar_cokernel(3, 2) == (0, [3, 3])


def test_degrees():
    d = pt.monomial_degree([2, -1])
    assert d["degrees"] == [2, 2] and d["valid"] and d["chain_map"]
    assert pt.monomial_degree([1, 1, 2], perturb_seed=3)["degrees"] == [1, 1, 2]


def test_errors():
    with pytest.raises(pt.InvalidParameter):
        pt.monomial_degree([1, 1])
    with pytest.raises(pt.PcspError):
        pt.bredon_cohomology(2, "Q", 1)


def test_structure_json():
    s = pt.lo(3)
    assert pt.structure_from_json(s.to_json()) == s
    assert json.loads(s.to_json())["kind"] == "structure"


def test_suite():
    report = pt.run_suite("homology")
    assert report["status"] == "pass"
    faulty = pt.run_suite("complexes", y2_fault=True)
    assert faulty["status"] == "fail"
