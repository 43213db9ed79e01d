import os

import numpy as np
import pytest

from petzlab.channels import random_channel, random_density
from petzlab.recovery import beta0_quadrature, petz, universal_recovery
from petzlab.serialize import (
    atomic_write_text,
    channel_sha256,
    dumps_channel,
    dumps_recovery,
    dumps_state,
    emit_report,
    emit_structured,
    emit_table,
    load_channel,
    load_state,
    loads_channel,
    loads_recovery,
    loads_state,
    parse_structured,
    parse_table,
    save_channel,
    save_state,
    state_sha256,
)


class TestStateFormat:
    def test_round_trip_exact(self, rng):
        rho = random_density(5, rng)
        again = loads_state(dumps_state(rho))
        np.testing.assert_array_equal(again, rho)

    def test_file_round_trip(self, rng, tmp_path):
        rho = random_density(3, rng)
        path = tmp_path / "state.txt"
        save_state(str(path), rho)
        np.testing.assert_array_equal(load_state(str(path)), rho)

    def test_awkward_floats_survive(self):
        rho = np.array(
            [[1.0 / 3.0, 1e-17 + 0.25j], [1e-17 - 0.25j, 2.0 / 3.0]], dtype=complex
        )
        np.testing.assert_array_equal(loads_state(dumps_state(rho)), rho)

    def test_rejects_other_files(self):
        with pytest.raises(ValueError, match="state"):
            loads_state("petzlab channel v1\n")


class TestChannelFormat:
    def test_round_trip_exact(self, rng):
        chan = random_channel(3, 2, 3, rng)
        again = loads_channel(dumps_channel(chan))
        np.testing.assert_array_equal(again.kraus, chan.kraus)
        assert again.mode == chan.mode

    def test_file_round_trip(self, rng, tmp_path):
        chan = random_channel(2, 2, 2, rng)
        path = tmp_path / "chan.txt"
        save_channel(str(path), chan)
        np.testing.assert_array_equal(load_channel(str(path)).kraus, chan.kraus)

    def test_trace_non_increasing_mode_round_trip(self):
        from petzlab.channels import Channel

        chan = Channel([0.5 * np.eye(2)], mode="tni")
        again = loads_channel(dumps_channel(chan))
        assert again.mode == "tni"
        np.testing.assert_array_equal(again.kraus, chan.kraus)

    def test_hashes_stable(self, rng):
        chan = random_channel(2, 2, 2, rng)
        assert channel_sha256(chan) == channel_sha256(chan)
        rho = random_density(2, rng)
        assert state_sha256(rho) != channel_sha256(chan)


class TestRecoveryFormat:
    def test_round_trip(self, rng):
        sigma = random_density(3, rng)
        chan = random_channel(3, 2, 2, rng)
        rec = universal_recovery(sigma, chan, beta0_quadrature(9))
        head = loads_recovery(dumps_recovery(rec))
        assert head["kind"] == "mixture"
        np.testing.assert_array_equal(head["kraus"], rec.kraus)
        np.testing.assert_array_equal(head["tnodes"], rec.nodes)
        np.testing.assert_array_equal(head["weights"], rec.weights)
        assert head["sigma_sha256"] == state_sha256(sigma)
        assert head["channel_sha256"] == channel_sha256(chan)

    def test_petz_header(self, rng):
        sigma = random_density(2, rng)
        chan = random_channel(2, 2, 2, rng)
        head = loads_recovery(dumps_recovery(petz(sigma, chan)))
        assert head["kind"] == "petz"
        assert head["tnodes"] is None


class TestAtomicWrite:
    def test_writes_and_cleans_up(self, tmp_path):
        path = tmp_path / "out.txt"
        atomic_write_text(str(path), "hello\n")
        assert path.read_text() == "hello\n"
        leftovers = [p for p in os.listdir(tmp_path) if p.startswith(".petzlab-")]
        assert leftovers == []

    def test_replaces_existing(self, tmp_path):
        path = tmp_path / "out.txt"
        path.write_text("old")
        atomic_write_text(str(path), "new")
        assert path.read_text() == "new"


class TestReports:
    def test_empty_table(self):
        text = emit_table([])
        assert text.startswith("# petzlab report v1")
        assert parse_table(text) == []

    def test_single_row(self):
        rows = [{"instance": 0, "lhs": 0.125, "slack": 1.5e-9}]
        parsed = parse_table(emit_table(rows))
        assert parsed[0]["instance"] == 0
        assert parsed[0]["lhs"] == pytest.approx(0.125)

    def test_twelve_significant_digits(self):
        rows = [{"value": 0.123456789012345678}]
        text = emit_table(rows)
        assert "0.123456789012" in text

    def test_structured_round_trip(self):
        payload = {
            "rows": [{"a": 1, "b": 0.1 + 0.2}],
            "summary": {"min_slack": -3.3e-17, "count": 2},
        }
        assert parse_structured(emit_structured(payload)) == payload

    def test_emit_report_formats(self):
        rows = [{"x": 1.0}]
        assert "x" in emit_report(rows, "table")
        doc = parse_structured(emit_report(rows, "structured", summary={"n": 1}))
        assert doc["rows"] == rows
        assert doc["summary"] == {"n": 1}
        with pytest.raises(ValueError, match="format"):
            emit_report(rows, "yaml")

    def test_deterministic_bytes(self):
        rows = [{"b": 2.0, "a": 1.0}]
        assert emit_structured({"rows": rows}) == emit_structured({"rows": rows})
        assert emit_table(rows) == emit_table(rows)
