import math

import numpy as np
import pytest

from pctpdm import reference as ref
from pctpdm.mass_profiles import MassProfile
from pctpdm.pct import (
    AUDIT_TOL,
    CompositionError,
    TargetProblem,
    audit,
    audit_composition,
    audit_csv,
    audit_table,
    generic_printed_target,
    make_target,
    mass_correction,
    paper_closed_form_target,
    target_potential,
    transform_wavefunction,
)
from pctpdm.reference import KratzerParams, MorseParams
from pctpdm.specfun import integrate

K = KratzerParams(1.0, 1.0)
M = MorseParams(8.0, 1.0)

# compositions whose support maps to a finite x-window
COMPOSITIONS = [
    (K, "uniform"), (K, "lorentzian a=20 q=1"), (K, "squared_lorentzian a=50 b=1"), (K, "exponential q=1"),
    (M, "uniform"), (M, "lorentzian a=5 q=1"), (M, "squared_lorentzian a=14 b=1"), (M, "exponential q=1"),
]


def _id(c):
    return f"{c[0].name}-{c[1].split()[0]}"


def x_integral(tp, f, n_max=2, pieces=120):
    """Integral over x with breakpoints at preimages of an even y-grid."""
    lo, hi = ref.support(tp.reference, n_max, 1e-14)
    rlo, rhi = tp.y_range
    span = hi - lo
    lo, hi = max(lo, rlo + 1e-9 * span), min(hi, rhi - 1e-9 * span)
    xs = np.sort(np.asarray(tp.x_of_y(np.linspace(lo, hi, pieces))))
    return sum(integrate(f, a, b, 1e-13) for a, b in zip(xs[:-1], xs[1:]))


def test_correction_examples():
    assert mass_correction(MassProfile("uniform"), 0.3) == 0.0
    assert mass_correction(MassProfile("lorentzian", a=1, q=1), 0.0) == pytest.approx(-0.25, abs=1e-15)
    assert mass_correction(MassProfile("squared_lorentzian", a=1, b=1), 0.0) == pytest.approx(-0.5, abs=1e-15)
    assert mass_correction(MassProfile("exponential", q=2), 0.0) == pytest.approx(-0.375, abs=1e-15)


def test_correction_closed_forms_over_x():
    xs = np.linspace(-3, 3, 41)
    a, q, b = 1.7, 0.6, 2.3
    lor = mass_correction(MassProfile("lorentzian", a=a, q=q), xs)
    assert np.allclose(lor, -(2 * q + xs**2) / (8 * a**2 * (q + xs**2)), rtol=1e-13)
    sq = mass_correction(MassProfile("squared_lorentzian", a=a, b=b), xs)
    assert np.allclose(sq, -(b + 2 * xs**2) / (2 * a**2), rtol=1e-13)
    ex = mass_correction(MassProfile("exponential", q=q), xs)
    assert np.allclose(ex, -3 * q**2 / 32 * np.exp(q * xs), rtol=1e-13)


@pytest.mark.parametrize("p", [K, KratzerParams(1.0, 1.0, ell=2), M, MorseParams(8.0, 1.0, ell=1)], ids=str)
def test_uniform_profile_is_identity(p):
    tp = TargetProblem(p, MassProfile("uniform"))
    xs = np.linspace(0.2, 9.0, 50)
    assert np.max(np.abs(target_potential(tp, xs) - p.potential(xs))) <= 1e-15
    st = ref.wavefunction(p, 1)
    psi = transform_wavefunction(tp, st)
    assert np.max(np.abs(psi(xs) - st(xs))) <= 1e-15


def test_printed_eq21_equals_generic_at_x1():
    prof = MassProfile("lorentzian", a=1, q=1)
    tp = TargetProblem(K, prof)
    assert abs(paper_closed_form_target("21", 1.0, K, prof) - target_potential(tp, 1.0)) <= 1e-12


def test_printed_eq26_equals_generic_at_half():
    prof = MassProfile("squared_lorentzian", a=1, b=1)
    tp = TargetProblem(K, prof)
    assert abs(paper_closed_form_target("26", 0.5, K, prof) - target_potential(tp, 0.5)) <= 1e-12


def test_printed_eq30_correction_term_deviation():
    prof = MassProfile("exponential", q=2)
    printed = paper_closed_form_target("30", 0.0, K, prof)
    generic = generic_printed_target(K, prof, 0.0)
    # printed 9/128 q^4 e^{-qx} = 1.125 against generic -3q^2/32 e^{qx} = -0.375
    assert printed - generic == pytest.approx(1.5, abs=1e-13)


def test_printed_closed_form_rejects_wrong_pairing():
    with pytest.raises(ValueError):
        paper_closed_form_target("21", 1.0, M, MassProfile("lorentzian"))
    with pytest.raises(KeyError):
        paper_closed_form_target("99", 1.0, K, MassProfile("lorentzian"))


def test_audit_verdicts():
    r21 = audit(make_target(K, MassProfile("lorentzian", a=1, q=1), n_max=0))
    assert [(r.equation_id, r.verdict) for r in r21] == [("21", "consistent")]
    assert len(r21[0].sample_points) >= 50 and r21[0].max_abs_deviation <= AUDIT_TOL
    r26 = audit(make_target(K, MassProfile("squared_lorentzian", a=40, b=1), n_max=0))
    assert r26[0].verdict == "consistent"
    r30 = audit(make_target(K, MassProfile("exponential", q=2), n_max=0))
    assert r30[0].equation_id == "30" and r30[0].verdict == "discrepant"
    r45 = audit(make_target(M, MassProfile("lorentzian", a=5, q=1), n_max=0))
    verdicts = {r.equation_id: r.verdict for r in r45}
    assert verdicts == {"45": "discrepant", "41": "discrepant", "41-corrected": "consistent"}


def test_eq45_discrepancy_is_coefficient_and_missing_correction():
    prof = MassProfile("lorentzian", a=5, q=1)
    xs = np.linspace(-0.3, 3, 9)
    printed = paper_closed_form_target("45", xs, M, prof)
    s = np.exp(-M.alpha * prof.mapping(xs))
    # at ell = 0 the printed form is D s^2 - 2 D2 s; generic is D s^2 - 2 D s + correction
    assert np.allclose(printed, M.D * s**2 - 2 * M.pekeris[2] * s, rtol=1e-12)
    generic = generic_printed_target(M, prof, xs)
    assert np.allclose(generic, M.D * (s**2 - 2 * s) + mass_correction(prof, xs), rtol=1e-12)


def test_audit_serialisation():
    recs = audit(make_target(K, MassProfile("exponential", q=2), n_max=0))
    csv_text = audit_csv(recs)
    assert csv_text.splitlines()[0] == "equation,verdict,max_deviation,argmax"
    assert csv_text.splitlines()[1].startswith("30,discrepant,")
    assert "discrepant" in audit_table(recs)


def test_make_target_orientation_and_offset():
    tk = make_target(K, MassProfile("exponential", q=1))
    assert tk.orientation == -1 and tk.offset == 0.0
    xs = np.linspace(-3, 10, 20)
    assert np.all(tk.y(xs) > 0)
    tm = make_target(M, MassProfile("exponential", q=1))
    assert tm.orientation == 1 and tm.offset > ref.support(M, 2)[1]
    assert make_target(M, MassProfile("lorentzian", a=5, q=1)).offset == 0.0


def test_make_target_rejects_short_image():
    with pytest.raises(CompositionError):
        make_target(K, MassProfile("squared_lorentzian", a=1, b=1))
    with pytest.raises(CompositionError):
        make_target(M, MassProfile("squared_lorentzian", a=1, b=1))


def test_transform_rejects_truncated_state():
    tp = TargetProblem(M, MassProfile("squared_lorentzian", a=1, b=1))
    with pytest.raises(CompositionError):
        transform_wavefunction(tp, ref.wavefunction(M, 0))


def test_target_potential_domain():
    tp = TargetProblem(K, MassProfile("lorentzian", a=1, q=1))
    assert tp.x_domain == (0.0, math.inf)
    with pytest.raises(ValueError):
        target_potential(tp, -0.5)


def test_norm_preserved_for_spec_lorentzian():
    tp = TargetProblem(K, MassProfile("lorentzian", a=1, q=1))
    psi = transform_wavefunction(tp, ref.wavefunction(K, 0))
    assert abs(x_integral(tp, lambda x: psi(x) ** 2, n_max=0) - 1) <= 1e-8


@pytest.mark.parametrize("comp", COMPOSITIONS, ids=_id)
def test_norm_and_orthogonality_preserved(comp):
    p, prof = comp
    tp = make_target(p, MassProfile.parse(prof))
    psis = [transform_wavefunction(tp, ref.wavefunction(p, n)) for n in range(3)]
    for i in range(3):
        for j in range(i, 3):
            val = x_integral(tp, lambda x: psis[i](x) * psis[j](x))
            if i == j:
                assert abs(val - 1) <= 1e-8
            else:
                assert abs(val) <= 1e-7


def test_audit_composition_handles_short_and_mirrored_images():
    # squared Lorentzian a=1 cannot carry the Kratzer ground state; exponential needs mirroring
    rec = audit_composition(K, MassProfile("squared_lorentzian", a=1, b=1))
    assert rec[0].equation_id == "26" and rec[0].verdict == "consistent"
    rec = audit_composition(K, MassProfile("exponential", q=2))
    assert rec[0].equation_id == "30" and rec[0].verdict == "discrepant"
    assert np.isfinite(rec[0].argmax)
