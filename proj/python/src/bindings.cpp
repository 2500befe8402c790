/*
 * Copyright 2026 The mjstream Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Python bindings for the codec and protocol core. Frames cross the boundary
// as HxWx3 uint8 numpy arrays; packets as (kind, seq, bytes) tuples.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "mjstream/capture.hpp"
#include "mjstream/stream.hpp"
#include "mjstream/wire.hpp"

namespace py = pybind11;
using namespace mjstream;

namespace {

RgbFrame frame_from_array(const py::array_t<uint8_t, py::array::c_style |
                                                         py::array::forcecast>&
                              array) {
  if (array.ndim() != 3 || array.shape(2) != 3)
    throw py::value_error("expected an (height, width, 3) uint8 array");
  RgbFrame frame;
  frame.height = int(array.shape(0));
  frame.width = int(array.shape(1));
  frame.pixels.resize(size_t(frame.width) * frame.height * 3);
  std::memcpy(frame.pixels.data(), array.data(), frame.pixels.size());
  return frame;
}

py::array_t<uint8_t> array_from_frame(const RgbFrame& frame) {
  py::array_t<uint8_t> array({frame.height, frame.width, 3});
  std::memcpy(array.mutable_data(), frame.pixels.data(), frame.pixels.size());
  return array;
}

py::bytes to_bytes(const std::vector<uint8_t>& data) {
  return py::bytes(reinterpret_cast<const char*>(data.data()), data.size());
}

std::vector<uint8_t> from_buffer(const py::buffer& buffer) {
  py::buffer_info info = buffer.request();
  const auto* begin = static_cast<const uint8_t*>(info.ptr);
  return std::vector<uint8_t>(begin, begin + info.size * info.itemsize);
}

py::tuple packet_tuple(const Packet& p) {
  return py::make_tuple(uint8_t(p.meta.kind), p.meta.seq, to_bytes(p.data));
}

Packet packet_from_tuple(const py::tuple& t) {
  if (t.size() != 3) throw py::value_error("packet must be (kind, seq, data)");
  Packet p;
  p.meta.kind = PacketKind(t[0].cast<uint8_t>());
  p.meta.seq = t[1].cast<uint8_t>();
  p.data = from_buffer(t[2].cast<py::buffer>());
  return p;
}

WireConfig wire_from_kwargs(uint16_t port, bool preamble) {
  WireConfig cfg;
  cfg.src_port = cfg.dst_port = port;
  cfg.include_preamble = preamble;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_mjstream, m) {
  m.doc() = "MJPEG-over-UDP codec and wire protocol core";

  py::register_exception<Error>(m, "MjstreamError", PyExc_RuntimeError);

  m.attr("AUDIO_CHUNK_SIZE") = kAudioChunkSize;
  m.attr("MAX_DATA_SIZE") = kMaxDataSize;
  m.attr("KIND_AUDIO") = uint8_t(PacketKind::Audio);
  m.attr("KIND_VIDEO") = uint8_t(PacketKind::Video);

  m.def(
      "encode_frame",
      [](const py::array_t<uint8_t, py::array::c_style |
                                        py::array::forcecast>& image,
         uint8_t seq_start, bool rgb565) {
        EncodeResult res = encode_frame(frame_from_array(image),
                                        CodecTables::standard(), seq_start,
                                        rgb565);
        py::list packets;
        for (const Packet& p : res.packets) packets.append(packet_tuple(p));
        py::dict stats;
        stats["packets"] = res.stats.packets;
        stats["payload_bytes"] = res.stats.payload_bytes;
        stats["mean_payload"] = res.stats.mean_payload;
        stats["max_payload"] = res.stats.max_payload;
        stats["compression_ratio"] = res.stats.compression_ratio;
        stats["saturated_blocks"] = res.stats.saturated_blocks;
        return py::make_tuple(packets, stats);
      },
      py::arg("image"), py::arg("seq_start") = 0, py::arg("rgb565") = false,
      "Encode one RGB frame; returns ([(kind, seq, payload), ...], stats)");

  m.def(
      "decode_frame",
      [](const py::list& packets, int width, int height) {
        CodecTables tables = CodecTables::standard();
        FrameAssembly assembly(width, height);
        for (const auto& item : packets) {
          Packet p = packet_from_tuple(item.cast<py::tuple>());
          assembly.apply(VideoPayload::parse(p.data), tables);
        }
        return array_from_frame(assembly.render());
      },
      py::arg("packets"), py::arg("width"), py::arg("height"),
      "Decode video packets of a single frame back into an RGB array");

  py::class_<Reassembler>(m, "Reassembler",
                          "Order-tolerant packet-to-frame reassembly")
      .def(py::init([](int width, int height) {
             return Reassembler(width, height, CodecTables::standard());
           }),
           py::arg("width"), py::arg("height"))
      .def(
          "push",
          [](Reassembler& self, uint8_t kind, uint8_t seq,
             const py::buffer& data) {
            self.push(PacketMeta{PacketKind(kind), seq}, from_buffer(data));
          },
          py::arg("kind"), py::arg("seq"), py::arg("data"))
      .def("finish", &Reassembler::finish)
      .def("take_frames",
           [](Reassembler& self) {
             py::list out;
             for (const RgbFrame& f : self.take_frames())
               out.append(array_from_frame(f));
             return out;
           })
      .def("take_audio",
           [](Reassembler& self) { return to_bytes(self.take_audio()); })
      .def("stats", [](const Reassembler& self) {
        const StreamStats& st = self.stats();
        py::dict d;
        d["packets"] = st.packets;
        d["video_packets"] = st.video_packets;
        d["audio_packets"] = st.audio_packets;
        d["rejected"] = st.rejected;
        d["out_of_order"] = st.out_of_order;
        d["seq_gaps"] = st.seq_gaps;
        d["frames_completed"] = st.frames_completed;
        d["dropped_positions"] = st.dropped_positions;
        d["mean_video_payload"] = st.mean_video_payload();
        d["compression_ratio"] = st.compression_ratio();
        return d;
      });

  m.def(
      "build_frame",
      [](uint8_t kind, uint8_t seq, const py::buffer& data, uint16_t port,
         bool preamble) {
        return to_bytes(build_frame(PacketMeta{PacketKind(kind), seq},
                                    from_buffer(data),
                                    wire_from_kwargs(port, preamble)));
      },
      py::arg("kind"), py::arg("seq"), py::arg("data"), py::arg("port") = 5005,
      py::arg("preamble") = false,
      "Build one Ethernet/IPv4/UDP frame around a payload");

  m.def(
      "parse_frame",
      [](const py::buffer& frame, uint16_t port) {
        ParsedFrame out;
        ParseStatus status =
            parse_frame(from_buffer(frame), wire_from_kwargs(port, false), out);
        return py::make_tuple(std::string(to_string(status)),
                              uint8_t(out.meta.kind), out.meta.seq,
                              to_bytes(out.data));
      },
      py::arg("frame"), py::arg("port") = 5005,
      "Parse one wire frame; returns (status, kind, seq, data)");

  m.def(
      "crc32",
      [](const py::buffer& data) { return Crc32::compute(from_buffer(data)); },
      py::arg("data"), "IEEE 802.3 CRC-32 of a byte string");

  m.def(
      "audio_packetize",
      [](const py::buffer& pcm) {
        AudioPacketizeResult res = audio_packetize(from_buffer(pcm));
        py::list chunks;
        for (const auto& c : res.chunks) chunks.append(to_bytes(c));
        return py::make_tuple(chunks, res.padded_bytes);
      },
      py::arg("pcm"),
      "Split PCM into 800-byte chunks; returns (chunks, padded_bytes)");

  m.def(
      "impair",
      [](const py::list& packets, double drop, int reorder_window,
         uint64_t seed) {
        std::vector<Packet> in;
        in.reserve(packets.size());
        for (const auto& item : packets)
          in.push_back(packet_from_tuple(item.cast<py::tuple>()));
        py::list out;
        for (const Packet& p : impair(std::move(in), drop, reorder_window, seed))
          out.append(packet_tuple(p));
        return out;
      },
      py::arg("packets"), py::arg("drop"), py::arg("reorder_window"),
      py::arg("seed"), "Seeded deterministic drop and bounded reorder");

  m.def(
      "estimate_throughput",
      [](double mean_payload_bytes, int packets_per_frame) {
        ThroughputEstimate est = estimate_throughput(
            CycleModel{}, mean_payload_bytes, packets_per_frame);
        return py::make_tuple(est.cycles_per_packet, est.fps);
      },
      py::arg("mean_payload_bytes"), py::arg("packets_per_frame") = 120,
      "Hardware cycle model; returns (cycles_per_packet, fps)");

  m.def("read_capture", [](const std::string& path) {
    py::list out;
    for (const FrameBytes& f : read_frames_auto(path)) out.append(to_bytes(f));
    return out;
  });
  m.def("write_capture",
        [](const std::string& path, const py::list& frames) {
          std::vector<FrameBytes> out;
          out.reserve(frames.size());
          for (const auto& item : frames)
            out.push_back(from_buffer(item.cast<py::buffer>()));
          write_capture(path, out);
        });
}
