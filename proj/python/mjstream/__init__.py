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

"""MJPEG-over-UDP codec and wire protocol toolkit."""

from ._mjstream import (
    AUDIO_CHUNK_SIZE,
    KIND_AUDIO,
    KIND_VIDEO,
    MAX_DATA_SIZE,
    MjstreamError,
    Reassembler,
    audio_packetize,
    build_frame,
    crc32,
    decode_frame,
    encode_frame,
    estimate_throughput,
    impair,
    parse_frame,
    read_capture,
    write_capture,
)

__all__ = [
    "AUDIO_CHUNK_SIZE",
    "KIND_AUDIO",
    "KIND_VIDEO",
    "MAX_DATA_SIZE",
    "MjstreamError",
    "Reassembler",
    "audio_packetize",
    "build_frame",
    "crc32",
    "decode_frame",
    "encode_frame",
    "estimate_throughput",
    "impair",
    "parse_frame",
    "read_capture",
    "write_capture",
]

__version__ = "0.1.0"
