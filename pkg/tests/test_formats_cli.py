import json
import xml.etree.ElementTree as ET

import pytest

from biplane.cli import main
from biplane.errors import PreconditionError
from biplane.formats import (dumps_layered, dumps_points, loads_layered,
                             loads_points)
from biplane.generators import regular_polygon_points
from biplane.layered import BOTH, LAYER1, LAYER2, LayeredGraph
from biplane.render import render_svg


class TestPointFormat:
    def test_round_trip(self):
        ps = regular_polygon_points(9)
        again = loads_points(dumps_points(ps))
        assert [p.coords() for p in again] == [p.coords() for p in ps]

    def test_comments_and_blanks(self):
        text = "# corners\n0 0\n\n4 0   # right\n1 3\n"
        ps = loads_points(text)
        assert [p.coords() for p in ps] == [(0, 0), (4, 0), (1, 3)]

    def test_bad_line_rejected(self):
        with pytest.raises(PreconditionError):
            loads_points("0 0\n1\n2 2\n")

    def test_non_integer_rejected(self):
        with pytest.raises(PreconditionError):
            loads_points("0 0\n1.5 2\n5 5\n")


class TestLayeredFormat:
    def graph(self):
        ps = regular_polygon_points(4)
        return LayeredGraph(ps, {(0, 1): LAYER1, (1, 2): LAYER2, (0, 2): BOTH})

    def test_round_trip(self):
        g = self.graph()
        again = loads_layered(dumps_layered(g), g.ps)
        assert again.layers == g.layers

    def test_header_mismatch_rejected(self):
        g = self.graph()
        text = dumps_layered(g).replace("4 3", "4 7", 1)
        with pytest.raises(PreconditionError):
            loads_layered(text, g.ps)

    def test_bad_layer_rejected(self):
        g = self.graph()
        text = "4 1\n0 1 9\n"
        with pytest.raises(PreconditionError):
            loads_layered(text, g.ps)


class TestRender:
    def test_svg_well_formed_and_styled(self):
        g = LayeredGraph(regular_polygon_points(5),
                         {(0, 1): LAYER1, (1, 3): LAYER2, (0, 2): BOTH})
        svg = render_svg(g)
        root = ET.fromstring(svg)
        assert root.tag.endswith("svg")
        assert "stroke-dasharray" in svg  # layer 2 dashed
        assert svg.count("<line") == 3

    def test_points_only(self):
        svg = render_svg(LayeredGraph(regular_polygon_points(4), {}))
        assert "<line" not in svg and svg.count("<circle") == 4


class TestCli:
    def run(self, *argv):
        return main(list(argv))

    def test_gen_build_verify_round_trip(self, tmp_path, capsys):
        pts = tmp_path / "p.pts"
        edges = tmp_path / "g.edges"
        assert self.run("gen", "--shape", "regular", "--n", "14", "--out", str(pts)) == 0
        assert self.run("build", "--mode", "convex5", "--points", str(pts),
                        "--out", str(edges)) == 0
        out = capsys.readouterr().out
        assert "kappa: 5" in out and "biplane: true" in out
        assert self.run("verify", "--points", str(pts), "--edges", str(edges)) == 0
        out = capsys.readouterr().out
        assert "kappa: 5" in out

    def test_build_rejects_13_with_exit_2(self, tmp_path, capsys):
        pts = tmp_path / "p13.pts"
        self.run("gen", "--shape", "regular", "--n", "13", "--out", str(pts))
        assert self.run("build", "--mode", "convex5", "--points", str(pts)) == 2

    def test_augment_wheel_exit_2(self, tmp_path):
        pts, edges = tmp_path / "w.pts", tmp_path / "w.edges"
        self.run("gen", "--shape", "wheel", "--n", "8", "--out", str(pts),
                 "--edges-out", str(edges))
        assert self.run("augment", "--target", "4", "--points", str(pts),
                        "--edges", str(edges)) == 2

    def test_augment_3_reports_added_edges(self, tmp_path, capsys):
        pts, edges = tmp_path / "f.pts", tmp_path / "f.edges"
        self.run("gen", "--shape", "fan", "--n", "8", "--out", str(pts),
                 "--edges-out", str(edges))
        capsys.readouterr()
        assert self.run("--format", "json", "augment", "--target", "3",
                        "--points", str(pts), "--edges", str(edges)) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["kappa"] >= 3
        assert payload["added_edges"]

    def test_augment_4_random_triangulation(self, tmp_path, capsys):
        pts, edges = tmp_path / "t.pts", tmp_path / "t.edges"
        from biplane.generators import random_triangulation
        from biplane.formats import edges_as_layered, dumps_points
        from biplane.triangulation import TriangulationClass, classify
        seed = 0
        while True:
            t = random_triangulation(7, seed)
            if classify(t) is TriangulationClass.OTHER:
                break
            seed += 1
        pts.write_text(dumps_points(t.ps))
        edges.write_text(dumps_layered(edges_as_layered(t.ps, t.edges)))
        assert self.run("--format", "json", "augment", "--target", "4",
                        "--points", str(pts), "--edges", str(edges)) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["kappa"] >= 4

    def test_verify_reports_cut_counts_for_triangulation(self, tmp_path, capsys):
        pts, edges = tmp_path / "w.pts", tmp_path / "w.edges"
        self.run("gen", "--shape", "wheel", "--n", "8", "--out", str(pts),
                 "--edges-out", str(edges))
        capsys.readouterr()
        assert self.run("--format", "json", "verify", "--points", str(pts),
                        "--edges", str(edges)) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["kappa"] == 3
        assert payload["chords"] == 0 and payload["bichords"] > 0

    def test_no5conn_gen_and_verify(self, tmp_path, capsys):
        pts, edges = tmp_path / "c.pts", tmp_path / "c.edges"
        assert self.run("gen", "--shape", "no5conn", "--k", "2", "--out", str(pts),
                        "--edges-out", str(edges)) == 0
        capsys.readouterr()
        assert self.run("--format", "json", "verify", "--points", str(pts),
                        "--edges", str(edges)) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["kappa"] == 4
        assert payload["chords"] == payload["bichords"] == payload["separating_triangles"] == 0

    def test_build_nonconvex_precondition_exit_3(self, tmp_path):
        pts = tmp_path / "nc.pts"
        from biplane.formats import dumps_points
        from biplane.generators import regular_polygon_points
        base = regular_polygon_points(14)
        body = dumps_points(base) + "1 2\n"
        pts.write_text(body)
        assert self.run("build", "--mode", "convex5", "--points", str(pts)) == 3

    def test_gen_random_deterministic(self, tmp_path):
        a, b = tmp_path / "a.pts", tmp_path / "b.pts"
        self.run("gen", "--shape", "random", "--n", "20", "--seed", "7", "--out", str(a))
        self.run("gen", "--shape", "random", "--n", "20", "--seed", "7", "--out", str(b))
        assert a.read_text() == b.read_text()

    def test_build_general_with_trace(self, tmp_path, capsys):
        pts = tmp_path / "g.pts"
        trace = tmp_path / "trace"
        self.run("gen", "--shape", "regular", "--n", "14", "--out", str(pts))
        capsys.readouterr()
        assert self.run("build", "--mode", "general5", "--points", str(pts),
                        "--out", str(tmp_path / "g.edges"), "--trace", str(trace)) == 0
        assert list(trace.glob("*.edges"))

    def test_render_cli(self, tmp_path):
        pts, edges, svg = tmp_path / "p.pts", tmp_path / "g.edges", tmp_path / "g.svg"
        self.run("gen", "--shape", "regular", "--n", "12", "--out", str(pts))
        self.run("build", "--mode", "convex5", "--points", str(pts), "--out", str(edges))
        assert self.run("render", "--points", str(pts), "--edges", str(edges),
                        "--out", str(svg)) == 0
        ET.fromstring(svg.read_text())

    def test_byte_identical_build_outputs(self, tmp_path):
        pts = tmp_path / "p.pts"
        self.run("gen", "--shape", "regular", "--n", "16", "--out", str(pts))
        outs = []
        for name in ("x.edges", "y.edges"):
            out = tmp_path / name
            self.run("build", "--mode", "convex4", "--points", str(pts), "--out", str(out))
            outs.append(out.read_text())
        assert outs[0] == outs[1]
