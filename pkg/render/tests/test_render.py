"""Renderer: schema fidelity, the three figure styles, and failure exits."""

import json
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from fibrender.cli import main
from fibrender.document import DocumentError, RenderSpec, load_document, validate_document
from fibrender.draw import draw_document, drawn_vertices, render

FIXTURES = Path(__file__).parent / "fixtures"
STYLES = {
    "twisting_lines": FIXTURES / "twisting_lines.json",
    "semicircle_tunnels": FIXTURES / "semicircle_tunnels.json",
    "vertical_lines_ball": FIXTURES / "vertical_lines_ball.json",
}


@pytest.fixture()
def runner():
    return CliRunner()


class TestSchema:
    def test_fixtures_validate(self):
        for path in STYLES.values():
            load_document(str(path))

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda d: d.pop("space"),
            lambda d: d.update(space="S3"),
            lambda d: d.pop("fibers"),
            lambda d: d["fibers"][0].pop("points"),
            lambda d: d["fibers"][0]["points"].__setitem__(0, [1.0, 2.0]),
            lambda d: d["fibers"][0]["points"].__setitem__(0, [1.0, 2.0, float("nan")]),
            lambda d: d["fibers"][0].__setitem__("points", d["fibers"][0]["points"][:1]),
        ],
    )
    def test_violations_rejected(self, mutate):
        doc = json.loads(STYLES["twisting_lines"].read_text())
        mutate(doc)
        with pytest.raises(DocumentError):
            validate_document(doc)

    def test_halfspace_height_enforced(self):
        doc = json.loads(STYLES["semicircle_tunnels"].read_text())
        doc["fibers"][0]["points"][0][2] = -0.5
        with pytest.raises(DocumentError):
            validate_document(doc)

    def test_ball_norm_enforced(self):
        doc = json.loads(STYLES["vertical_lines_ball"].read_text())
        doc["fibers"][0]["points"][0] = [2.0, 0.0, 0.0]
        with pytest.raises(DocumentError):
            validate_document(doc)


class TestVertexFidelity:
    @pytest.mark.parametrize("style", sorted(STYLES))
    def test_drawn_vertices_equal_document_vertices(self, style, tmp_path):
        doc = load_document(str(STYLES[style]))
        spec = RenderSpec(str(STYLES[style]), str(tmp_path / "out.png"))
        fig, ax = draw_document(doc, spec)
        drawn = drawn_vertices(ax)
        assert len(drawn) == len(doc["fibers"])
        for fiber, verts in zip(doc["fibers"], drawn):
            assert np.array_equal(verts, np.asarray(fiber["points"], dtype=float))

    def test_vertex_sets_stable_between_runs(self, tmp_path):
        doc = load_document(str(STYLES["semicircle_tunnels"]))
        spec = RenderSpec(str(STYLES["semicircle_tunnels"]), str(tmp_path / "out.png"))
        first = drawn_vertices(draw_document(doc, spec)[1])
        second = drawn_vertices(draw_document(doc, spec)[1])
        assert all(np.array_equal(a, b) for a, b in zip(first, second))


class TestImages:
    @pytest.mark.parametrize("style", sorted(STYLES))
    def test_all_three_styles_produce_nonempty_images(self, style, tmp_path):
        out = tmp_path / f"{style}.png"
        spec = RenderSpec(str(STYLES[style]), str(out), color_by="z-level")
        render(spec)
        assert out.exists() and out.stat().st_size > 10_000

    def test_color_by_lambda_on_semicircle_export(self, tmp_path):
        out = tmp_path / "lam.png"
        render(RenderSpec(str(STYLES["semicircle_tunnels"]), str(out), color_by="lambda"))
        assert out.exists() and out.stat().st_size > 0

    def test_color_by_lambda_missing_param_rejected(self, tmp_path):
        with pytest.raises(DocumentError):
            render(RenderSpec(str(STYLES["twisting_lines"]), str(tmp_path / "x.png"), color_by="lambda"))

    def test_empty_fiber_list_renders_empty_axes(self, tmp_path):
        doc_path = tmp_path / "empty.json"
        doc_path.write_text(
            json.dumps({"space": "E3", "fibration": {"variant": "euclidean-ft", "t": 0.0}, "fibers": []})
        )
        out = tmp_path / "empty.png"
        render(RenderSpec(str(doc_path), str(out)))
        assert out.exists() and out.stat().st_size > 0


class TestCli:
    def test_render_command(self, runner, tmp_path):
        out = tmp_path / "fig.png"
        result = runner.invoke(
            main,
            [str(STYLES["twisting_lines"]), "--out", str(out), "--elev", "30", "--azim", "45", "--color-by", "z-level"],
        )
        assert result.exit_code == 0, result.output
        assert out.exists() and out.stat().st_size > 0

    def test_schema_violation_exits_nonzero(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"space": "E3", "fibers": []}))
        result = runner.invoke(main, [str(bad), "--out", str(tmp_path / "x.png")])
        assert result.exit_code != 0

    def test_not_json_exits_nonzero(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("not json at all")
        result = runner.invoke(main, [str(bad), "--out", str(tmp_path / "x.png")])
        assert result.exit_code != 0

    def test_missing_input_exits_nonzero(self, runner, tmp_path):
        result = runner.invoke(main, [str(tmp_path / "absent.json"), "--out", str(tmp_path / "x.png")])
        assert result.exit_code != 0
