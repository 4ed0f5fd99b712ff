"""Test the CLI commands end to end"""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from brunnian_forge.cli import app
from brunnian_forge.errors import DiagramError
from brunnian_forge.topology.reidemeister import BrunnianVerdict

HOPF_PD = "X[4,1,3,2], X[2,3,1,4]\n"
WITNESS = "complement of the chain fibres over a handlebody"

runner = CliRunner()


def payload(output: str) -> dict:
    """The JSON object in the output, ignoring any surrounding status text"""
    start, end = output.index("{"), output.rindex("}")
    return json.loads(output[start : end + 1])


@pytest.fixture
def hopf_file(tmp_path) -> str:
    path = tmp_path / "hopf.pd"
    path.write_text(HOPF_PD, encoding="utf-8")
    return str(path)


class TestGenerate:
    """Test gen and export"""

    def test_gen_then_lk(self, tmp_path):
        """Test a generated torus grid has an all-zero linking matrix"""
        outfile = tmp_path / "grid.json"
        result = runner.invoke(
            app, ["gen", "-f", "torusgrid", "--m", "2", "--n", "3", "-o", str(outfile)]
        )
        assert result.exit_code == 0
        assert "saved to:" in result.output
        assert json.loads(outfile.read_text())["version"] == 1

        result = runner.invoke(app, ["lk", str(outfile), "--json"])
        assert result.exit_code == 0
        report = payload(result.output)
        assert report["components"] == 12
        assert report["matrix"] == [[0] * 12 for _ in range(12)]

    def test_gen_pd(self, tmp_path):
        """Test PD output of a lamp link"""
        outfile = tmp_path / "lamp.pd"
        result = runner.invoke(
            app,
            ["gen", "-f", "lamp", "--indices", "1,1,1,1", "--format", "pd"]
            + ["-o", str(outfile)],
        )
        assert result.exit_code == 0
        assert outfile.read_text().startswith("X[")

    def test_unknown_family(self):
        """Test an unknown family is an input error"""
        result = runner.invoke(app, ["gen", "-f", "klein", "--n", "3"])
        assert result.exit_code == 2

    def test_bad_indices(self):
        """Test non-integer lamp indices"""
        result = runner.invoke(app, ["gen", "-f", "lamp", "--indices", "1,x"])
        assert result.exit_code == 2

    def test_export_gauss(self, hopf_file, tmp_path):
        """Test re-encoding a PD file as Gauss code"""
        outfile = tmp_path / "hopf.gauss"
        result = runner.invoke(
            app, ["export", hopf_file, "--format", "gauss", "-o", str(outfile)]
        )
        assert result.exit_code == 0
        assert outfile.read_text() == "O0- U1-\nO1- U0-\n"


class TestInspection:
    """Test validate, lk, alternating, simplify and brunnian"""

    def test_validate_presentation(self, milnor4, write_presentation):
        """Test a generated presentation is valid"""
        result = runner.invoke(app, ["validate", write_presentation(milnor4)])
        assert result.exit_code == 0
        assert "valid" in result.output

    def test_validate_garbage(self, tmp_path):
        """Test unparseable text exits 2"""
        path = tmp_path / "nonsense.json"
        path.write_text("nonsense", encoding="utf-8")
        assert runner.invoke(app, ["validate", str(path)]).exit_code == 2

    def test_validate_malformed_json(self, tmp_path):
        """Test a broken JSON document exits 2"""
        path = tmp_path / "broken.json"
        path.write_text('{"version": 1, "diagram": ', encoding="utf-8")
        assert runner.invoke(app, ["validate", str(path)]).exit_code == 2

    def test_missing_file(self, tmp_path):
        """Test a missing input exits 2"""
        missing = str(tmp_path / "absent.json")
        assert runner.invoke(app, ["validate", missing]).exit_code == 2

    def test_lk_dangling_crossing(self, milnor4, write_presentation):
        """Test a diagram missing one passage exits 2 without a traceback"""
        path = Path(write_presentation(milnor4))
        doc = json.loads(path.read_text(encoding="utf-8"))
        del doc["diagram"]["components"][0][0]
        path.write_text(json.dumps(doc), encoding="utf-8")
        result = runner.invoke(app, ["lk", str(path)])
        assert result.exit_code == 2
        assert not isinstance(result.exception, DiagramError)

    def test_validate_reports_dangling_crossing(self, milnor4, write_presentation):
        """Test validate lists the problem instead of refusing the file"""
        path = Path(write_presentation(milnor4))
        doc = json.loads(path.read_text(encoding="utf-8"))
        del doc["diagram"]["components"][0][0]
        path.write_text(json.dumps(doc), encoding="utf-8")
        result = runner.invoke(app, ["validate", str(path), "--json"])
        assert result.exit_code == 1
        assert payload(result.output)["valid"] is False

    def test_alternating(self, hopf_file):
        """Test the Hopf diagram alternates"""
        result = runner.invoke(app, ["alternating", hopf_file])
        assert result.exit_code == 0
        assert "alternating" in result.output

    def test_simplify_kink(self):
        """Test a curl read from stdin simplifies to the unknot"""
        result = runner.invoke(app, ["simplify", "-", "--json"], input="O0+ U0+\n")
        assert result.exit_code == 0
        report = payload(result.output)
        assert report["crossings_before"] == 1
        assert report["crossings_after"] == 0
        assert report["pd"] == "O[1]"
        assert [m["kind"] for m in report["trace"]] == ["R1"]

    def test_simplify_bad_budget(self, hopf_file):
        """Test a negative search depth is an input error"""
        result = runner.invoke(app, ["simplify", hopf_file, "--r3-depth", "-1"])
        assert result.exit_code == 2

    def test_brunnian_hopf(self, hopf_file):
        """Test the Hopf link is witnessed Brunnian"""
        result = runner.invoke(app, ["brunnian", hopf_file, "--json"])
        assert result.exit_code == 0
        assert BrunnianVerdict.BRUNNIAN_WITNESSED.value in result.output


class TestCertify:
    """Test sn, stable, sprime and untied"""

    def test_sn(self, milnor4, write_presentation):
        """Test D3 holds by count at N = 7"""
        source = write_presentation(milnor4)
        result = runner.invoke(app, ["sn", source, "--disk", "D3", "--N", "7"])
        assert result.exit_code == 0
        assert "Holds(CountBelowN)" in result.output

    def test_sn_stdin(self, milnor4, write_presentation):
        """Test reading the presentation from stdin"""
        text = Path(write_presentation(milnor4)).read_text(encoding="utf-8")
        result = runner.invoke(
            app, ["sn", "-", "--disk", "D3", "--N", "7"], input=text
        )
        assert result.exit_code == 0
        assert "Holds(CountBelowN)" in result.output

    def test_sn_unknown_disk(self, milnor4, write_presentation):
        """Test an unregistered disk exits 2"""
        source = write_presentation(milnor4)
        result = runner.invoke(app, ["sn", source, "--disk", "D9", "--N", "7"])
        assert result.exit_code == 2

    def test_sn_rejects_pd(self, hopf_file):
        """Test sn needs a presentation, not bare diagram text"""
        result = runner.invoke(app, ["sn", hopf_file, "--disk", "D1", "--N", "7"])
        assert result.exit_code == 2

    def test_stable(self, milnor4, write_presentation, tmp_path):
        """Test the Milnor disks certify and the certificate replays"""
        source = write_presentation(milnor4)
        cert = tmp_path / "stable.json"
        result = runner.invoke(app, ["stable", source, "-o", str(cert)])
        assert result.exit_code == 0
        assert json.loads(cert.read_text())["verdict"] == "Certified"
        assert runner.invoke(app, ["validate", source, "-c", str(cert)]).exit_code == 0

    def test_sprime_and_replay(self, debrunner5, write_presentation, tmp_path):
        """Test an s-prime certificate is written and replays"""
        source = write_presentation(debrunner5)
        cert = tmp_path / "sprime.json"
        result = runner.invoke(app, ["sprime", source, "-o", str(cert)])
        assert result.exit_code == 0
        assert json.loads(cert.read_text())["verdict"] == "SPrimeModuloAssumptions"

        result = runner.invoke(app, ["validate", source, "-c", str(cert)])
        assert result.exit_code == 0

    def test_replay_tampered(self, debrunner5, write_presentation, tmp_path):
        """Test a forged certificate fails validation"""
        source = write_presentation(debrunner5)
        cert = tmp_path / "sprime.json"
        runner.invoke(app, ["sprime", source, "-o", str(cert)])
        doc = json.loads(cert.read_text())
        doc["verdict"] = "Incomplete"
        cert.write_text(json.dumps(doc), encoding="utf-8")

        result = runner.invoke(app, ["validate", source, "-c", str(cert), "--json"])
        assert result.exit_code == 1
        assert payload(result.output)["valid"] is False

    def test_sprime_incomplete(self, w5, write_presentation, tmp_path):
        """Test unresolved orbits give exit 1"""
        source = write_presentation(w5, "w5.json")
        cert = tmp_path / "w5-cert.json"
        result = runner.invoke(app, ["sprime", source, "-o", str(cert)])
        assert result.exit_code == 1
        assert json.loads(cert.read_text())["verdict"] == "Incomplete"

    def test_untied(self, brunnchain4, write_presentation, tmp_path):
        """Test the witness decides the verdict"""
        source = write_presentation(brunnchain4)
        cert = tmp_path / "untied.json"
        result = runner.invoke(
            app, ["untied", source, "--witness", WITNESS, "-o", str(cert)]
        )
        assert result.exit_code == 0
        assert json.loads(cert.read_text())["verdict"] == "UntiedModuloAssumptions"

        result = runner.invoke(app, ["untied", source, "-o", str(cert)])
        assert result.exit_code == 1


class TestApp:
    """Test top-level options"""

    def test_version(self):
        """Test the version flag"""
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert "brunnian-forge version: 0.1.0" in result.output

    def test_unknown_option(self, hopf_file):
        """Test an unknown flag is a usage error"""
        assert runner.invoke(app, ["lk", hopf_file, "--colour"]).exit_code == 2
