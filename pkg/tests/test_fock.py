import pytest

from ktrace.corealg import LaurentPoly, Partition
from ktrace.fock import (
    WedgeVector,
    alpha,
    check_boson_fermion,
    check_car,
    fock_suite,
    phi_inverse,
    phi_map,
    psi,
    psi_star,
)
from ktrace.symfunc import s


@pytest.mark.parametrize("c", [-1, 0, 2])
def test_vacuum_moves(c):
    vac = WedgeVector.vacuum(c)
    assert psi(c + 1, vac) == WedgeVector.vacuum(c + 1)
    assert psi(c, vac).is_zero()
    assert psi_star(c, vac) == WedgeVector.vacuum(c - 1)
    assert psi_star(c + 1, vac).is_zero()


def test_creation_of_a_box():
    vac = WedgeVector.vacuum(0)
    assert alpha(-1, vac) == WedgeVector.basis((1,), 0)
    assert alpha(1, vac).is_zero()


@pytest.mark.parametrize("mu", [(), (1,), (2, 1), (3,), (1, 1, 1)])
def test_boson_fermion_basis_map(mu):
    v = phi_map(1, s(*mu, dmax=4))
    assert v == WedgeVector.basis(mu, 1, 4)
    assert phi_inverse(v) == s(*mu, dmax=4)


def test_small_anticommutation_grid():
    ok, count = check_car(maxsize=2, charges=(0,), span=2, dmax=14)
    assert ok and count > 0


def test_vertex_reading_of_fermions():
    ok, count = check_boson_fermion(maxsize=2, charges=(-1, 0, 1), span=2, dmax=7)
    assert ok and count > 0


def test_quick_suite():
    res = fock_suite(quick=True)
    assert set(res) == {"anticommutation", "heisenberg", "phic_gamma", "gamma_commutation", "boson_fermion", "projection"}
    assert all(ok for ok, _ in res.values())
