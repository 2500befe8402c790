# Copyright 2026 The mjstream Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the python extension module."""

import numpy as np
import pytest

import mjstream as mj


def gradient_frame(width=320, height=180):
    y, x = np.mgrid[0:height, 0:width]
    img = np.empty((height, width, 3), np.uint8)
    img[..., 0] = (40 + 170 * x / width).astype(np.uint8)
    img[..., 1] = (60 + 150 * y / height).astype(np.uint8)
    img[..., 2] = 120
    return img


def test_encode_decode_round_trip():
    img = gradient_frame()
    packets, stats = mj.encode_frame(img)
    assert len(packets) == 120
    assert stats["packets"] == 120
    assert stats["mean_payload"] > 0

    out = mj.decode_frame(packets, 320, 180)
    assert out.shape == (180, 320, 3)
    diff = np.abs(out.astype(int) - img.astype(int))
    assert diff.mean() < 4.0  # smooth content survives quantization closely


def test_solid_frame_is_bit_exact_inside():
    img = np.full((180, 320, 3), 128, np.uint8)
    packets, _ = mj.encode_frame(img)
    out = mj.decode_frame(packets, 320, 180)
    # Rows touching the 180->192 padding may ring; everything above is exact.
    assert (out[:176] == 128).all()


def test_sequence_numbers_wrap():
    packets, _ = mj.encode_frame(gradient_frame(), seq_start=250)
    seqs = [seq for _, seq, _ in packets]
    assert seqs[:8] == [250, 251, 252, 253, 254, 255, 0, 1]


def test_reassembler_frames_and_audio():
    img = gradient_frame()
    packets, _ = mj.encode_frame(img)
    pcm = bytes(range(256)) * 25  # 6400 bytes -> 8 chunks
    chunks, padded = mj.audio_packetize(pcm)
    assert len(chunks) == 8 and padded == 0

    r = mj.Reassembler(320, 180)
    seq = 0
    for kind, _, data in packets:
        r.push(kind, seq & 0xFF, data)
        seq += 1
    for c in chunks:
        r.push(mj.KIND_AUDIO, seq & 0xFF, c)
        seq += 1
    r.finish()

    frames = r.take_frames()
    assert len(frames) == 1
    assert frames[0].shape == (180, 320, 3)
    assert r.take_audio() == pcm

    stats = r.stats()
    assert stats["frames_completed"] == 1
    assert stats["seq_gaps"] == 0
    assert stats["out_of_order"] == 0


def test_impair_is_deterministic_and_bounded():
    packets, _ = mj.encode_frame(gradient_frame())
    a = mj.impair(packets, 0.25, 6, 1234)
    b = mj.impair(packets, 0.25, 6, 1234)
    assert a == b
    assert len(a) < len(packets)
    # Survivors decode exactly like their lossless counterparts.
    full = mj.decode_frame(packets, 320, 180)
    partial = mj.decode_frame(a, 320, 180)
    for _, _, data in a:
        pos = data[0]
        sx = (pos % 10) * 32
        sy = (pos // 10) * 16
        np.testing.assert_array_equal(partial[sy:sy + 16, sx:sx + 32],
                                      full[sy:sy + 16, sx:sx + 32])


def test_wire_round_trip_and_crc():
    payload = bytes(range(200))
    frame = mj.build_frame(mj.KIND_VIDEO, 9, payload)
    assert len(frame) == 14 + 20 + 8 + 2 + 200 + 4
    status, kind, seq, data = mj.parse_frame(frame)
    assert (status, kind, seq, data) == ("ok", mj.KIND_VIDEO, 9, payload)

    flipped = bytearray(frame)
    flipped[30] ^= 0x40
    status, *_ = mj.parse_frame(bytes(flipped))
    assert status == "bad-fcs"

    assert mj.crc32(b"123456789") == 0xCBF43926


def test_parse_filters_other_ports():
    frame = mj.build_frame(mj.KIND_AUDIO, 0, b"x" * 32, port=5005)
    status, *_ = mj.parse_frame(frame, port=6000)
    assert status == "not-ours"


def test_throughput_model_reference_points():
    cycles, fps = mj.estimate_throughput(135.0)
    assert cycles == pytest.approx(4344.0)
    assert fps == pytest.approx(191.8354818907305, rel=1e-12)
    _, fps_full = mj.estimate_throughput(1470.0)
    assert fps_full > 30.0


def test_capture_files_round_trip(tmp_path):
    frames = [mj.build_frame(mj.KIND_VIDEO, i, bytes([i]) * (10 + i))
              for i in range(5)]
    path = str(tmp_path / "frames.cap")
    mj.write_capture(path, frames)
    assert mj.read_capture(path) == frames


def test_encode_rejects_bad_geometry():
    with pytest.raises(mj.MjstreamError):
        mj.encode_frame(np.zeros((33, 16, 3), np.uint8))
