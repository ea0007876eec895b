import json
import shutil
from fractions import Fraction

import pytest

from verify19.cli import main
from verify19.data import DATA_DIR
from verify19.errors import DataFileError
from verify19.report import Provenance, Status, VerificationReport, render, render_json, render_text
from verify19.suite import SELECTORS, SuiteConfig, run_suite

FAST = ["hopf", "curve", "groups", "ext"]


@pytest.fixture(scope="module")
def all_report():
    return run_suite(["all"])


def test_json_round_trip():
    rep = run_suite(FAST)
    assert VerificationReport.from_json(json.loads(render_json(rep))) == rep


def test_json_is_byte_deterministic():
    assert render_json(run_suite(FAST)) == render_json(run_suite(FAST))


def test_checks_sorted_and_unique():
    rep = run_suite(FAST)
    ids = [c.id for c in rep.checks]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)


def test_empty_selector():
    rep = run_suite([])
    doc = json.loads(render(rep, "json"))
    assert doc["checks"] == []
    assert doc["summary"] == {"pass": 0, "fail": 0, "inconclusive": 0, "assumed": 0, "total": 0}
    assert rep.exit_code() == 0


def test_unknown_selector():
    with pytest.raises(ValueError):
        run_suite(["nope"])
    with pytest.raises(ValueError):
        render(run_suite([]), "xml")


def test_digests_cover_loaded_files():
    rep = run_suite(["hopf", "curve"])
    assert set(rep.digests) == {"hopf/presentations.json", "fields/Q_i_sqrt_m19.json", "fields/F.json"}
    assert all(len(d) == 64 for d in rep.digests.values())


def test_all_suite_has_exactly_the_imported_facts_assumed(all_report):
    assumed = sorted(c.id for c in all_report.checks if c.status is Status.ASSUMED)
    assert assumed == ["assumed.biconnected", "assumed.faltings", "assumed.mayer_vietoris", "assumed.raynaud"]
    for c in all_report.checks:
        assert (c.status is Status.ASSUMED) == (c.provenance is Provenance.ASSUMED)


def test_all_suite_size_and_sections(all_report):
    assert len(all_report.checks) >= 30
    prefixes = {c.id.split(".")[0] for c in all_report.checks if c.id != "degree_bound=137"}
    assert prefixes == set(SELECTORS) | {"assumed"}
    assert all_report.get("degree_bound=137").section == all_report.get("bounds.fontaine").section


def test_all_suite_passes_on_shipped_data(all_report):
    bad = [f"{c.id}: {c.computed}" for c in all_report.checks if c.status not in (Status.PASS, Status.ASSUMED)]
    assert not bad


def test_bounds_contains_degree_bound_check():
    rep = run_suite(["bounds"])
    assert rep.get("degree_bound=137").expected == "137"


def test_text_report_cites_ray_class_group(all_report):
    text = render_text(all_report)
    assert "Cl₂ ≅ C₃" in text
    assert "summary:" in text and "sha256:" in text


def test_exit_codes():
    rep = run_suite(FAST)
    assert rep.exit_code() == 0
    failing = VerificationReport(rep.version, {}, [*rep.checks])
    object.__setattr__(failing.checks[0], "status", Status.FAIL)
    assert failing.exit_code() == 1
    pending = VerificationReport(rep.version, {}, [*run_suite(["ext"]).checks])
    object.__setattr__(pending.checks[0], "status", Status.INCONCLUSIVE)
    assert pending.exit_code() == 2


def _copy_data(tmp_path):
    root = tmp_path / "data"
    shutil.copytree(DATA_DIR, root, ignore=shutil.ignore_patterns("*.py", "__pycache__"))
    return root


def test_corrupted_unit_certificate_fails_norm_check(tmp_path):
    root = _copy_data(tmp_path)
    path = root / "fields" / "Q_i_sqrt_m19.json"
    doc = json.loads(path.read_text())
    doc["units"][0][0] = str(Fraction(doc["units"][0][0]) + 1)
    path.write_text(json.dumps(doc))
    rep = run_suite(["cft"], SuiteConfig(data_dir=root))
    units = rep.get("cft.quartic.units")
    assert units.status is Status.FAIL
    assert "norm" in units.computed
    assert rep.exit_code() == 1


def test_missing_data_file(tmp_path):
    root = _copy_data(tmp_path)
    (root / "hopf" / "presentations.json").unlink()
    with pytest.raises(DataFileError) as info:
        run_suite(["hopf"], SuiteConfig(data_dir=root))
    assert "presentations.json" in str(info.value)
    assert main(["hopf", "--data", str(root)]) == 66


def test_corrupt_certificate_is_a_data_error(tmp_path):
    root = _copy_data(tmp_path)
    (root / "fields" / "F.json").write_text("{not json")
    with pytest.raises(DataFileError):
        run_suite(["curve"], SuiteConfig(data_dir=root))


def test_cli_writes_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["ext", "groups", "--report", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["fail"] == 0
    assert any(c["id"] == "ext.mod8" for c in doc["checks"])
    assert capsys.readouterr().out == ""


def test_cli_text_to_stdout(capsys):
    assert main(["ext"]) == 0
    assert "ext.mu2_19" in capsys.readouterr().out


def test_cli_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 64
    assert main(["ext", "--hopf-n-max", "0"]) == 64
