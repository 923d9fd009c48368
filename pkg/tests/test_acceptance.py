"""End-to-end properties of the three germ families at desk scale."""
import cmath
import math

import numpy as np
import pytest

from src.cli import main
from src.dynamics.germs import parse_word, validate
from src.dynamics.matrix_analysis import (
    eigen_data,
    eigen_residual,
    is_perfect_square,
    random_words,
    verify_phi_equivariance,
    word_to_matrix,
)
from src.errors import NotInCone
from src.potentials.invariant_functions import InvariantFunction, automorphy_spec, build
from src.potentials.kcone import PeriodicFunction, max_scale, membership, psi_members
from src.verification import sampling
from src.verification.calibration import CalibrationFunction, tamper
from src.verification.suites import (
    enoki_containment,
    foliation_check,
    ih_box_check,
    intermediate_containment,
    invariance_residual,
    leaf_constancy_check,
    lelong_estimate,
    levi_psd_check,
    radial_subharmonicity_check,
)

LOG2 = math.log(2.0)


def random_complex(rng, scale=1.0) -> list:
    return [float(rng.normal(0.0, scale)), float(rng.normal(0.0, scale))]


def random_enoki(rng):
    modulus, angle = rng.uniform(0.1, 0.9), rng.uniform(-math.pi, math.pi)
    alpha = cmath.rect(modulus, angle)
    s = int(rng.integers(1, 5))
    Q = [random_complex(rng) for _ in range(int(rng.integers(0, s + 1)))]
    return validate({"family": "enoki", "alpha": [alpha.real, alpha.imag], "s": s, "Q": Q})


def random_intermediate(rng):
    p = int(rng.choice([2, 3, 5]))
    s = int(rng.integers(1, 5))
    # a nonzero linear coefficient keeps the gcd condition satisfied
    low = [random_complex(rng) for _ in range(s)]
    low[0] = [1.0 + abs(low[0][0]), low[0][1]]
    return validate({"family": "intermediate", "p": p, "s": s, "lambda": random_complex(rng), "low": low})


def function_for(germ, member: int = 1):
    if germ.family == "enoki":
        return build(germ)
    period = math.log(germ.p) if germ.family == "intermediate" else math.log(eigen_data(germ.matrix).lambda1)
    return build(germ, psi_members(period)[member])


def random_germs(seed: int = 2024):
    rng = np.random.default_rng(seed)
    germs = [random_enoki(rng) for _ in range(10)]
    germs += [random_intermediate(rng) for _ in range(10)]
    germs += [parse_word(w) for w in random_words(rng, 10, 10)]
    return germs


# ----------------------------------------------------------------- invariance

def test_invariance_identities_on_random_germs():
    for germ in random_germs():
        report = invariance_residual(function_for(germ), germ, samples=1000)
        assert report.value <= 1e-9, germ.to_spec()


# ----------------------------------------------------------------- eigen structure

def test_eigen_structure_battery():
    rng = np.random.default_rng(99)
    for word in random_words(rng, 200, 12):
        m = word_to_matrix(word)
        disc = m.trace ** 2 - 4 * m.det
        assert m.det in (1, -1)
        assert disc > 0 and not is_perfect_square(disc)
        ed = eigen_data(m)
        assert ed.lambda1 > 1.0 + 1e-9
        assert ed.alpha * ed.beta > 0 > ed.alpha2 * ed.beta2
        assert eigen_residual(m, ed) <= 1e-12
        samples = sampling.sample_family(rng, "ih", 1000, eigen=ed)
        assert verify_phi_equivariance(parse_word(word), ed, samples).value <= 1e-10, word


def test_golden_ratio_anchor():
    m = word_to_matrix("S")
    oracle = (m.trace + math.sqrt(m.trace ** 2 - 4 * m.det)) / 2.0
    ed = eigen_data(m)
    assert ed.lambda1 == pytest.approx(oracle, rel=1e-12)
    u = build(parse_word("S"), PeriodicFunction.zero(math.log(oracle)))
    assert automorphy_spec(u).constant == pytest.approx(-math.log(oracle), rel=1e-12)


# ----------------------------------------------------------------- cone boundary

def test_cone_boundary():
    omega = 2.0 * math.pi / LOG2
    eps = 1.0 / (omega * math.sqrt(omega ** 2 + 1.0))
    sine = PeriodicFunction.sine(LOG2)
    assert max_scale(sine) == pytest.approx(eps, rel=1e-6)
    assert membership(sine.scaled(0.99 * eps)).passed
    assert not membership(sine.scaled(1.01 * eps)).passed


# ----------------------------------------------------------------- Levi form and foliation

def family_functions(enoki_germ, intermediate_germ, golden_germ):
    yield build(enoki_germ)
    for member in range(3):
        yield function_for(intermediate_germ, member)
        yield function_for(golden_germ, member)


def test_levi_positivity(enoki_germ, intermediate_germ, golden_germ):
    for u in family_functions(enoki_germ, intermediate_germ, golden_germ):
        assert levi_psd_check(u, samples=500).value >= -1e-4, u.name
    assert levi_psd_check(CalibrationFunction("flat"), samples=500).value == pytest.approx(1.0, rel=0.02)
    assert levi_psd_check(CalibrationFunction("neg-z2"), samples=500).value == pytest.approx(-1.0, rel=0.02)


def test_foliation_property(enoki_germ, intermediate_germ, golden_germ):
    germs = {"enoki": enoki_germ, "intermediate": intermediate_germ, "ih": golden_germ}
    for u in family_functions(enoki_germ, intermediate_germ, golden_germ):
        assert foliation_check(u, germs[u.family], samples=500).value <= 1e-6, u.name
        if u.family == "ih":
            assert leaf_constancy_check(u, samples=500).value <= 1e-10
    assert not foliation_check(CalibrationFunction("rezrew"), samples=500).passed


# ----------------------------------------------------------------- containments

def test_containments(enoki_germ, intermediate_germ):
    reports = [
        enoki_containment(enoki_germ, 2.0, 20, samples=2000),
        intermediate_containment(intermediate_germ, 0.5, 1.0, 4, 40, samples=1000),
    ]
    for word in ("S", "SST"):
        germ = parse_word(word)
        reports.append(ih_box_check(germ, eigen_data(germ.matrix), n_max=10, samples=1000))
    for report in reports:
        assert report.passed, report.check
        assert report.value >= 0.0


# ----------------------------------------------------------------- Lelong numbers

def test_lelong_limits(intermediate_germ):
    assert lelong_estimate(CalibrationFunction("logz")).nu_hat == pytest.approx(1.0, abs=1e-3)
    u = build(intermediate_germ, PeriodicFunction.zero(LOG2))
    assert lelong_estimate(u).nu_hat == pytest.approx(0.0, abs=1e-2)


# ----------------------------------------------------------------- falsification

def test_tampered_inputs_are_rejected(enoki_germ, intermediate_germ, golden_germ):
    ed = eigen_data(golden_germ.matrix).perturbed(d_beta=0.01)
    samples = sampling.sample_family(sampling.make_rng(1), "ih", 1000, eigen=eigen_data(golden_germ.matrix))
    assert not verify_phi_equivariance(golden_germ, ed, samples).passed

    over = psi_members(LOG2)[1].scaled(8.0)
    assert not membership(over).passed
    with pytest.raises(NotInCone):
        build(intermediate_germ, over)
    forced = InvariantFunction("intermediate", over, None, -LOG2, intermediate_germ)
    assert radial_subharmonicity_check(forced).details["radial_nonnegative"] is False

    assert not invariance_residual(tamper(build(enoki_germ), "add-wsq"), enoki_germ, samples=1000).passed


# ----------------------------------------------------------------- determinism

def test_verify_reports_are_byte_identical(tmp_path, capsys):
    outputs = []
    for run in ("first", "second"):
        out_dir = tmp_path / run
        code = main(["verify", "--germ", '{"family": "ih", "word": "SST"}',
                     "--psi", '{"period": %r}' % math.log(2.0 + math.sqrt(3.0)),
                     "--samples", "100", "--seed", "12345", "--out", str(out_dir)])
        assert code == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(out_dir.glob("*.json"))})
    capsys.readouterr()
    assert outputs[0] == outputs[1]
    assert len(outputs[0]) == 5
