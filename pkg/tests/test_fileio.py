import struct

import numpy as np
import pytest

from conftest import random_signal
from qtfa import (Axis, OlctParams, StqolctPlan, gaussian_signal,
                  load_field, load_signal, save_field, save_signal,
                  stqolct_forward)
from qtfa.errors import FormatError, ParameterError


@pytest.fixture
def signal(small_axes):
    return random_signal(*small_axes, seed=42)


class TestQs2d:
    def test_roundtrip_bit_identical(self, signal, tmp_path):
        path = tmp_path / "f.qs2d"
        save_signal(signal, path)
        back = load_signal(path)
        assert back.ax1 == signal.ax1 and back.ax2 == signal.ax2
        assert np.array_equal(back.data, signal.data)

    def test_header_layout(self, signal, tmp_path):
        path = tmp_path / "f.qs2d"
        save_signal(signal, path)
        raw = path.read_bytes()
        assert raw[:4] == b"QS2D"
        version, n1, n2 = struct.unpack_from("<3I", raw, 4)
        assert (version, n1, n2) == (1, 16, 16)
        assert len(raw) == 48 + 16 * 16 * 4 * 8

    def test_wrong_magic(self, signal, tmp_path):
        path = tmp_path / "f.qs2d"
        save_signal(signal, path)
        raw = bytearray(path.read_bytes())
        raw[:4] = b"NOPE"
        path.write_bytes(bytes(raw))
        with pytest.raises(FormatError) as err:
            load_signal(path)
        assert err.value.offset == 0

    def test_truncated_payload(self, signal, tmp_path):
        path = tmp_path / "f.qs2d"
        save_signal(signal, path)
        raw = path.read_bytes()
        path.write_bytes(raw[:-8])
        with pytest.raises(FormatError) as err:
            load_signal(path)
        assert err.value.offset == len(raw) - 8

    def test_non_finite_payload_reports_offset(self, signal, tmp_path):
        path = tmp_path / "f.qs2d"
        save_signal(signal, path)
        raw = bytearray(path.read_bytes())
        bad_index = 37
        struct.pack_into("<d", raw, 48 + 8 * bad_index, float("nan"))
        path.write_bytes(bytes(raw))
        with pytest.raises(FormatError) as err:
            load_signal(path)
        assert err.value.offset == 48 + 8 * bad_index

    def test_unknown_extension(self, signal, tmp_path):
        with pytest.raises(ParameterError):
            save_signal(signal, tmp_path / "f.dat")


class TestCsv:
    def test_roundtrip_exact(self, signal, tmp_path):
        path = tmp_path / "f.csv"
        save_signal(signal, path)
        back = load_signal(path)
        assert np.max(np.abs(back.data - signal.data)) < 1e-15
        assert back.ax1.n == signal.ax1.n
        assert back.ax1.min == signal.ax1.min
        assert abs(back.ax1.step - signal.ax1.step) < 1e-15

    def test_header_and_line_endings(self, signal, tmp_path):
        path = tmp_path / "f.csv"
        save_signal(signal, path)
        raw = path.read_bytes()
        assert raw.startswith(b"x1,x2,q0,q1,q2,q3\n")
        assert b"\r" not in raw

    def test_bad_header(self, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("x,y,a,b,c,d\n0,0,1,0,0,0\n")
        with pytest.raises(FormatError) as err:
            load_signal(path)
        assert err.value.offset == 0

    def test_bad_field_count(self, signal, tmp_path):
        path = tmp_path / "f.csv"
        save_signal(signal, path)
        lines = path.read_text().split("\n")
        lines[3] = lines[3] + ",0.0"
        path.write_text("\n".join(lines))
        with pytest.raises(FormatError):
            load_signal(path)


class TestQtf4:
    @pytest.fixture
    def field(self):
        ax = Axis.centered(8, 4.0)
        window = gaussian_signal(ax, ax, 2.0)
        plan = StqolctPlan.create(OlctParams(0.6, 0.5, -0.8, 1.0, 0.3, -0.2),
                                  OlctParams(0, -1, 1, 0, 0.1, 0.2),
                                  ax, ax, window, stride=2)
        return stqolct_forward(gaussian_signal(ax, ax, 1.0), plan)

    def test_roundtrip_bit_identical(self, field, tmp_path):
        path = tmp_path / "s.qtf4"
        save_field(field, path)
        back = load_field(path)
        assert np.array_equal(back.data, field.data)
        assert back.w1 == field.w1 and back.w2 == field.w2
        assert back.u1 == field.u1 and back.u2 == field.u2
        assert back.params1 == field.params1
        assert back.params2 == field.params2
        assert back.plan is None

    def test_header_layout(self, field, tmp_path):
        path = tmp_path / "s.qtf4"
        save_field(field, path)
        raw = path.read_bytes()
        assert raw[:4] == b"QTF4"
        version, nw1, nw2, nu1, nu2 = struct.unpack_from("<5I", raw, 4)
        assert (version, nw1, nw2, nu1, nu2) == (1, 8, 8, 4, 4)
        assert len(raw) == 184 + 8 * 8 * 4 * 4 * 4 * 8

    def test_wrong_magic(self, field, tmp_path):
        path = tmp_path / "s.qtf4"
        save_field(field, path)
        raw = bytearray(path.read_bytes())
        raw[:4] = b"QS2D"
        path.write_bytes(bytes(raw))
        with pytest.raises(FormatError) as err:
            load_field(path)
        assert err.value.offset == 0

    def test_truncated(self, field, tmp_path):
        path = tmp_path / "s.qtf4"
        save_field(field, path)
        raw = path.read_bytes()
        path.write_bytes(raw[: len(raw) // 2])
        with pytest.raises(FormatError):
            load_field(path)
