import numpy as np
import pytest

from matcanon.errors import PreconditionError
from matcanon.truncation import (
    coupled_chain_matrix,
    coupling_toeplitz,
    run_truncation_study,
    study_to_csv,
    thermal_diag_matrix,
)


class TestFamilies:
    def test_thermal_matrix_layout(self):
        a = thermal_diag_matrix(3, 1.0, 2.0)
        want = np.diag([2.0, 1.25, 1.0 + 1.0 / 9.0] * 2)
        np.testing.assert_allclose(a, want, rtol=1e-15)

    def test_toeplitz_values(self):
        t = coupling_toeplitz(3)
        np.testing.assert_allclose(t, [[1.0, 0.5, 0.2], [0.5, 1.0, 0.5], [0.2, 0.5, 1.0]])

    def test_coupled_chain_zero_eps_is_thermal(self):
        np.testing.assert_array_equal(
            coupled_chain_matrix(4, 1.0, 2.0, 0.0), thermal_diag_matrix(4, 1.0, 2.0)
        )

    def test_parameter_guards(self):
        with pytest.raises(PreconditionError):
            thermal_diag_matrix(2, -1.0, 2.0)
        with pytest.raises(PreconditionError):
            thermal_diag_matrix(2, 1.0, 0.0)
        with pytest.raises(PreconditionError):
            thermal_diag_matrix(0, 1.0, 1.0)


class TestStudy:
    def test_thermal_closed_form(self):
        study = run_truncation_study("thermal-diag", [4, 8], 1.0, 2.0)
        got = study["results"][0]["spectrum"]
        want = [2.0, 1.25, 1.0 + 1.0 / 9.0, 1.0625]
        assert np.max(np.abs(np.array(got) - np.array(want))) <= 1e-12

    def test_top_value_is_stable(self):
        study = run_truncation_study("thermal-diag", [2, 4, 8], 0.5, 1.0)
        tops = [entry["spectrum"][0] for entry in study["results"]]
        assert np.max(np.abs(np.array(tops) - 1.5)) <= 1e-12

    def test_deltas_structure(self):
        study = run_truncation_study("thermal-diag", [2, 4], 1.0, 2.0)
        delta = study["consecutive_deltas"][0]
        assert delta["from"] == 2 and delta["to"] == 4 and delta["top_m"] == 2
        assert delta["max_abs_delta"] <= 1e-12

    def test_coupled_chain_matches_thermal_at_zero_eps(self):
        a = run_truncation_study("thermal-diag", [3, 5], 1.0, 2.0)
        b = run_truncation_study("coupled-chain", [3, 5], 1.0, 2.0, eps=0.0)
        for ra, rb in zip(a["results"], b["results"]):
            assert ra["spectrum"] == rb["spectrum"]

    def test_positivity_guard_rejects_and_continues(self):
        study = run_truncation_study("coupled-chain", [2, 4], 1.0, 2.0, eps=-2.0)
        statuses = [entry["status"] for entry in study["results"]]
        assert "rejected" in statuses
        assert len(study["results"]) == 2

    def test_spectra_are_the_section_spectra(self):
        from matcanon.williamson import symplectic_spectrum

        study = run_truncation_study("coupled-chain", [3, 6], 1.0, 2.0, eps=0.05)
        for entry in study["results"]:
            section = coupled_chain_matrix(entry["n"], 1.0, 2.0, 0.05)
            direct = symplectic_spectrum(section)
            assert np.max(np.abs(np.array(entry["spectrum"]) - direct)) <= 1e-12

    def test_size_validation(self):
        with pytest.raises(PreconditionError):
            run_truncation_study("thermal-diag", [4, 4], 1.0, 2.0)
        with pytest.raises(PreconditionError):
            run_truncation_study("thermal-diag", [], 1.0, 2.0)
        with pytest.raises(PreconditionError):
            run_truncation_study("bogus", [2], 1.0, 2.0)


def test_csv_format():
    study = run_truncation_study("thermal-diag", [2], 1.0, 1.0)
    csv = study_to_csv(study)
    lines = csv.strip().splitlines()
    assert lines[0] == "n,index,value"
    assert lines[1].startswith("2,1,2") and len(lines) == 3
