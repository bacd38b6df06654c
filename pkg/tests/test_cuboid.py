import csv
import io
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boxtheta.cuboid import (
    CSV_HEADER,
    CuboidCandidate,
    RationalBoxPoint,
    SearchConfig,
    brute_force,
    candidates_to_csv,
    classify,
    is_perfect_square,
    passes_residue_filter,
    run_search,
    search,
    search_list,
    write_csv,
)

# some primitive Euler bricks with edges below 1000
SMALL_BRICKS = [(44, 117, 240), (85, 132, 720), (140, 480, 693), (160, 231, 792)]


class TestSquares:
    @given(st.integers(0, 10**30))
    def test_is_perfect_square(self, n):
        r = is_perfect_square(n)
        if r is None:
            assert math.isqrt(n) ** 2 != n
        else:
            assert r * r == n

    @given(st.integers(0, 10**12))
    def test_filter_never_rejects_a_square(self, k):
        assert passes_residue_filter(k * k)

    def test_filter_rejects_most_non_squares(self):
        rejected = sum(not passes_residue_filter(n) for n in range(10**4))
        assert rejected > 0.8 * 10**4

    def test_negative(self):
        with pytest.raises(ValueError):
            is_perfect_square(-1)


class TestCandidate:
    def test_smallest_brick(self):
        c = CuboidCandidate(44, 117, 240, 125, 244, 267)
        assert c.is_euler_brick and not c.is_perfect

    def test_wrong_diagonal(self):
        with pytest.raises(ValueError):
            CuboidCandidate(44, 117, 240, 125, 244, 268)

    def test_unordered_edges(self):
        with pytest.raises(ValueError):
            CuboidCandidate(117, 44, 240)

    def test_csv_row_blanks_missing(self):
        assert CuboidCandidate(44, 117, 240, 125, 244, 267).csv_row("euler") == [
            "44", "117", "240", "125", "244", "267", "", "euler"
        ]


class TestConfig:
    @pytest.mark.parametrize("kwargs", [{"max_edge": 0}, {"max_edge": 10, "mode": "nearly"}, {"max_edge": 10, "worker_count": 0}])
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            SearchConfig(**kwargs)


class TestSearch:
    @pytest.mark.parametrize("mode", ["euler", "perfect"])
    def test_nothing_below_ten(self, mode):
        assert search_list(10, mode) == []

    def test_smallest_brick_found(self):
        found = search_list(240)
        assert found[0] == CuboidCandidate(44, 117, 240, 125, 244, 267)

    @pytest.mark.parametrize("max_edge", [50, 240, 300])
    @pytest.mark.parametrize("mode", ["euler", "perfect"])
    def test_pruning_matches_brute_force(self, max_edge, mode):
        assert search_list(max_edge, mode) == brute_force(max_edge, mode)

    def test_lexicographic_and_primitive(self):
        found = search_list(1000)
        assert found == sorted(found)
        assert all(math.gcd(*c.edges) == 1 for c in found)
        for a, b, c in SMALL_BRICKS:
            assert all(is_perfect_square(x * x + y * y) for x, y in ((a, b), (a, c), (b, c)))
        assert set(SMALL_BRICKS) <= {c.edges for c in found}

    def test_no_perfect_cuboid_up_to_2000(self):
        assert search_list(2000, "perfect") == []

    @pytest.mark.parametrize("workers", [4, 8])
    def test_worker_count_does_not_change_output(self, workers):
        serial = candidates_to_csv(search_list(1200), "euler")
        parallel = candidates_to_csv(search_list(1200, workers=workers), "euler")
        assert serial == parallel

    def test_streams(self):
        it = search(SearchConfig(300))
        assert next(it).edges == (44, 117, 240)

    def test_brute_force_mode_check(self):
        with pytest.raises(ValueError):
            brute_force(10, "cube")


class TestOutput:
    def test_header(self):
        text = candidates_to_csv([], "euler")
        assert text == ",".join(CSV_HEADER) + "\n"

    def test_csv_round_trip(self, tmp_path):
        found = search_list(800)
        path = tmp_path / "bricks.csv"
        write_csv(found, str(path), "euler")
        rows = list(csv.DictReader(io.StringIO(path.read_text())))
        assert [(int(r["w1"]), int(r["w2"]), int(r["w3"])) for r in rows] == [c.edges for c in found]
        assert all(r["space_diag"] == "" and r["mode"] == "euler" for r in rows)

    def test_summary(self, tmp_path):
        path = tmp_path / "out.csv"
        found, summary = run_search(SearchConfig(300, output_path=str(path)), timing=False)
        assert summary == {"max_edge": 300, "mode": "euler", "primitive_count": len(found)}
        assert path.read_text().count("\n") == len(found) + 1
        _, timed = run_search(SearchConfig(20))
        assert timed["elapsed_ms"] >= 0

    def test_unwritable_sink(self, tmp_path):
        with pytest.raises(OSError):
            run_search(SearchConfig(50, output_path=str(tmp_path / "missing" / "x.csv")))


class TestRationalPoints:
    def test_scaled_node_is_trivial(self):
        p = RationalBoxPoint(tuple(Fraction(c, 5) for c in (5, 5, 0, 0, 0, 5, 5)))
        assert classify(p) == "trivial"

    def test_brick_is_not_a_rational_point(self):
        with pytest.raises(ValueError):
            RationalBoxPoint.from_cuboid(44, 117, 240)

    def test_degenerate_cuboid(self):
        # a flat box (3, 4, 0) has all diagonals integral
        p = RationalBoxPoint.from_cuboid(3, 4, 0)
        assert p.coords == (4, 3, 5, 3, 4, 0, 5)
        assert classify(p) == "trivial"

    def test_relations_checked(self):
        with pytest.raises(ValueError):
            RationalBoxPoint((1, 1, 1, 1, 1, 1, 1))

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            RationalBoxPoint((0,) * 7)

    def test_arity(self):
        with pytest.raises(ValueError):
            RationalBoxPoint((1, 1, 0))

    def test_nontrivial_definition(self):
        # no nontrivial point is known; classify only looks for a zero coordinate
        p = object.__new__(RationalBoxPoint)
        object.__setattr__(p, "coords", (Fraction(1),) * 7)
        assert classify(p) == "nontrivial"
