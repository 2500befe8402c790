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

// mjstream: command line front end for the codec and protocol library.
//
//   encode    image sequence -> capture of wire frames
//   decode    capture -> reconstructed frames (+ audio PCM)
//   send      live UDP transmit of an image sequence (+ audio PCM)
//   receive   live UDP receive -> capture or decoded frames
//   analyze   dissect a capture or sniffer hex CSV
//   simulate  apply seeded drop/reorder to a capture
//   cycles    hardware throughput model over a capture
//
// Exit codes: 0 success, 1 usage, 2 validation or I/O, 3 protocol.
// Every option can come from a --config file (key=value; subcommand options
// under a [subcommand] section) or from the environment as MJSTREAM_<NAME>.

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mjstream/capture.hpp"
#include "mjstream/image_io.hpp"
#include "mjstream/stream.hpp"
#include "mjstream/udp.hpp"
#include "mjstream/wire.hpp"

using namespace mjstream;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitProtocol = 3;

// ---------------------------------------------------------------------------
// Shared option plumbing.

struct Options {
  std::string geometry = "320x180";
  bool geometry_given = false;

  std::string src_mac = "02:00:00:00:00:01";
  std::string dst_mac = "02:00:00:00:00:02";
  std::string src_ip = "192.168.1.1";
  std::string dst_ip = "192.168.1.2";
  int port = 5005;
  int src_port = -1;  // follows --port unless set
  int ttl = 64;
  bool preamble = false;

  std::string quant_luma, quant_chroma;
  std::string dc_luma, ac_luma, dc_chroma, ac_chroma;

  uint64_t seed = 1;
  double drop = 0.0;
  int reorder = 1;
  bool pace = false;
  double fps = 30.0;

  std::string json_path;
};

void parse_geometry(const std::string& text, int& width, int& height) {
  int w = 0, h = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%dx%d%c", &w, &h, &extra) != 2 || w <= 0 ||
      h <= 0)
    throw IoError("bad geometry '" + text + "', expected WIDTHxHEIGHT");
  width = w;
  height = h;
}

WireConfig make_wire_config(const Options& opt) {
  WireConfig cfg;
  cfg.src_mac = MacAddr::parse(opt.src_mac);
  cfg.dst_mac = MacAddr::parse(opt.dst_mac);
  cfg.src_ip = Ipv4Addr::parse(opt.src_ip);
  cfg.dst_ip = Ipv4Addr::parse(opt.dst_ip);
  if (opt.port < 1 || opt.port > 65535)
    throw IoError("port out of range: " + std::to_string(opt.port));
  cfg.dst_port = uint16_t(opt.port);
  cfg.src_port = opt.src_port < 0 ? cfg.dst_port : uint16_t(opt.src_port);
  if (opt.ttl < 1 || opt.ttl > 255)
    throw IoError("ttl out of range: " + std::to_string(opt.ttl));
  cfg.ttl = uint8_t(opt.ttl);
  cfg.include_preamble = opt.preamble;
  return cfg;
}

CodecTables make_tables(const Options& opt) {
  CodecTables t = CodecTables::standard();
  if (!opt.quant_luma.empty())
    t.quant_luma = QuantTable::load_file(opt.quant_luma, ChannelClass::Luma);
  if (!opt.quant_chroma.empty())
    t.quant_chroma =
        QuantTable::load_file(opt.quant_chroma, ChannelClass::Chroma);
  if (!opt.dc_luma.empty())
    t.dc_luma = HuffmanTable::load_file(opt.dc_luma, true);
  if (!opt.ac_luma.empty())
    t.ac_luma = HuffmanTable::load_file(opt.ac_luma, false);
  if (!opt.dc_chroma.empty())
    t.dc_chroma = HuffmanTable::load_file(opt.dc_chroma, true);
  if (!opt.ac_chroma.empty())
    t.ac_chroma = HuffmanTable::load_file(opt.ac_chroma, false);
  return t;
}

void add_wire_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--src-mac", opt.src_mac, "Source MAC address")
      ->envname("MJSTREAM_SRC_MAC")
      ->capture_default_str();
  cmd->add_option("--dst-mac", opt.dst_mac, "Destination MAC address")
      ->envname("MJSTREAM_DST_MAC")
      ->capture_default_str();
  cmd->add_option("--src-ip", opt.src_ip, "Source IPv4 address")
      ->envname("MJSTREAM_SRC_IP")
      ->capture_default_str();
  cmd->add_option("--dst-ip", opt.dst_ip, "Destination IPv4 address")
      ->envname("MJSTREAM_DST_IP")
      ->capture_default_str();
  cmd->add_option("--port", opt.port,
                  "UDP port: bind for receive, destination otherwise; also "
                  "the parse filter")
      ->envname("MJSTREAM_PORT")
      ->capture_default_str();
  cmd->add_option("--src-port", opt.src_port,
                  "UDP source port (defaults to --port)")
      ->envname("MJSTREAM_SRC_PORT");
  cmd->add_option("--ttl", opt.ttl, "IPv4 time to live")
      ->capture_default_str();
  cmd->add_flag("--preamble", opt.preamble,
                "Include the 8-byte preamble in built frames")
      ->envname("MJSTREAM_PREAMBLE");
}

void add_table_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--quant-luma", opt.quant_luma,
                  "Luma quantization table file (64 divisors)");
  cmd->add_option("--quant-chroma", opt.quant_chroma,
                  "Chroma quantization table file");
  cmd->add_option("--dc-luma", opt.dc_luma, "Luma DC Huffman table file");
  cmd->add_option("--ac-luma", opt.ac_luma, "Luma AC Huffman table file");
  cmd->add_option("--dc-chroma", opt.dc_chroma, "Chroma DC Huffman table file");
  cmd->add_option("--ac-chroma", opt.ac_chroma, "Chroma AC Huffman table file");
}

CLI::Option* add_geometry_option(CLI::App* cmd, Options& opt) {
  return cmd
      ->add_option("--geometry", opt.geometry,
                   "Frame geometry WIDTHxHEIGHT (needed for raw RGB24 input "
                   "and for decoding)")
      ->envname("MJSTREAM_GEOMETRY")
      ->capture_default_str();
}

void write_json_report(const std::string& path, const json& report) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report: " + path);
  out << report.dump(2) << '\n';
}

const char* kind_name(uint8_t kind) {
  switch (kind) {
    case uint8_t(PacketKind::Audio):
      return "audio";
    case uint8_t(PacketKind::Video):
      return "video";
    default:
      return "unknown";
  }
}

// ---------------------------------------------------------------------------
// encode: images -> capture.

struct EncodeArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string audio;
  bool rgb565 = false;
};

int cmd_encode(const Options& opt, const EncodeArgs& args) {
  int want_w = 0, want_h = 0;
  parse_geometry(opt.geometry, want_w, want_h);
  const CodecTables tables = make_tables(opt);
  const WireConfig wire = make_wire_config(opt);

  std::vector<uint8_t> pcm;
  if (!args.audio.empty()) {
    std::ifstream in(args.audio, std::ios::binary);
    if (!in) throw IoError("cannot read audio file: " + args.audio);
    pcm.assign(std::istreambuf_iterator<char>(in), {});
  }
  AudioPacketizeResult audio = audio_packetize(pcm);
  // Audio chunks are spread evenly across frames so a receiver hears a
  // steady stream instead of a burst at the end.
  size_t audio_cursor = 0;

  CaptureWriter writer(args.output);
  uint8_t seq = 0;
  int frame_w = 0, frame_h = 0;
  size_t total_video = 0, total_audio = 0, total_payload = 0;
  json frames_report = json::array();

  for (size_t i = 0; i < args.inputs.size(); ++i) {
    RgbFrame frame = read_image(args.inputs[i], want_w, want_h);
    if (i == 0) {
      frame_w = frame.width;
      frame_h = frame.height;
      if (opt.geometry_given && (frame_w != want_w || frame_h != want_h))
        throw IoError("input is " + std::to_string(frame_w) + "x" +
                      std::to_string(frame_h) + " but --geometry says " +
                      opt.geometry);
    } else if (frame.width != frame_w || frame.height != frame_h) {
      throw IoError("frame " + std::to_string(i) +
                    " changes geometry mid-sequence: " + args.inputs[i]);
    }

    EncodeResult res = encode_frame(frame, tables, seq, args.rgb565);
    seq = uint8_t(seq + res.packets.size());
    for (const Packet& p : res.packets)
      writer.write(build_frame(p.meta, p.data, wire));
    total_video += res.packets.size();
    total_payload += res.stats.payload_bytes;

    size_t audio_until =
        audio.chunks.size() * (i + 1) / args.inputs.size();
    for (; audio_cursor < audio_until; ++audio_cursor) {
      PacketMeta meta{PacketKind::Audio, seq};
      seq = uint8_t(seq + 1);
      writer.write(build_frame(meta, audio.chunks[audio_cursor], wire));
      ++total_audio;
    }

    std::printf(
        "frame %zu: %d packets, mean payload %.1f B, max %zu B, "
        "ratio %.1f, saturated %d\n",
        i, res.stats.packets, res.stats.mean_payload, res.stats.max_payload,
        res.stats.compression_ratio, res.stats.saturated_blocks);
    frames_report.push_back({{"index", i},
                             {"packets", res.stats.packets},
                             {"payload_bytes", res.stats.payload_bytes},
                             {"mean_payload", res.stats.mean_payload},
                             {"max_payload", res.stats.max_payload},
                             {"compression_ratio", res.stats.compression_ratio},
                             {"saturated_blocks", res.stats.saturated_blocks}});
  }
  writer.close();

  double mean = total_video ? double(total_payload) / double(total_video) : 0;
  double ratio = mean > 0 ? (kRawPacketBits / 8.0) / mean : 0;
  std::printf(
      "wrote %s: %zu frames, %zu video + %zu audio packets, "
      "mean payload %.1f B, ratio %.1f\n",
      args.output.c_str(), args.inputs.size(), total_video, total_audio, mean,
      ratio);

  write_json_report(opt.json_path,
                    {{"command", "encode"},
                     {"output", args.output},
                     {"frames", frames_report},
                     {"totals",
                      {{"frames", args.inputs.size()},
                       {"video_packets", total_video},
                       {"audio_packets", total_audio},
                       {"audio_padded_bytes", audio.padded_bytes},
                       {"mean_payload", mean},
                       {"compression_ratio", ratio}}}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// decode: capture -> frames + audio + stats.

struct DecodeArgs {
  std::string input;
  std::string output_dir;
  std::string format = "png";
  std::string audio_out;
  std::string reference;
};

struct ParseCounts {
  size_t ok = 0, bad_fcs = 0, not_ours = 0, malformed = 0;

  void count(ParseStatus s) {
    switch (s) {
      case ParseStatus::Ok: ++ok; break;
      case ParseStatus::BadFcs: ++bad_fcs; break;
      case ParseStatus::NotOurs: ++not_ours; break;
      case ParseStatus::Malformed: ++malformed; break;
    }
  }
};

int cmd_decode(const Options& opt, const DecodeArgs& args) {
  int width = 0, height = 0;
  parse_geometry(opt.geometry, width, height);
  if (args.format != "png" && args.format != "ppm" && args.format != "rgb24")
    throw IoError("unknown output format: " + args.format);

  const WireConfig wire = make_wire_config(opt);
  std::vector<FrameBytes> raw = read_frames_auto(args.input);
  if (raw.empty()) throw IoError("capture is empty: " + args.input);

  Reassembler reasm(width, height, make_tables(opt));
  ParseCounts verdicts;
  for (const FrameBytes& bytes : raw) {
    ParsedFrame parsed;
    ParseStatus status = parse_frame(bytes, wire, parsed);
    verdicts.count(status);
    if (status == ParseStatus::Ok) reasm.push(parsed.meta, parsed.data);
  }
  if (verdicts.ok == 0)
    throw MalformedStreamError("no frame in " + args.input +
                               " parses under this wire config");
  reasm.finish();

  std::vector<RgbFrame> frames = reasm.take_frames();
  std::vector<uint8_t> audio = reasm.take_audio();
  const StreamStats& st = reasm.stats();

  json frame_reports = json::array();
  std::optional<RgbFrame> reference;
  if (!args.reference.empty())
    reference = read_image(args.reference, width, height);

  if (!args.output_dir.empty())
    std::filesystem::create_directories(args.output_dir);
  for (size_t i = 0; i < frames.size(); ++i) {
    json fr{{"index", i}};
    if (!args.output_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%04zu.%s", i,
                    args.format.c_str());
      std::string path = args.output_dir + "/" + name;
      write_image(path, frames[i]);
      fr["path"] = path;
    }
    if (reference) {
      double q = psnr(*reference, frames[i]);
      std::printf("frame %zu: psnr %.2f dB\n", i, q);
      fr["psnr_db"] = q;
    }
    frame_reports.push_back(std::move(fr));
  }
  if (!args.audio_out.empty()) {
    std::ofstream out(args.audio_out, std::ios::binary);
    if (!out) throw IoError("cannot write audio: " + args.audio_out);
    out.write(reinterpret_cast<const char*>(audio.data()),
              std::streamsize(audio.size()));
  }

  int positions = reasm.current_assembly().positions_total();
  size_t slots = size_t(st.frames_completed) * size_t(positions);
  double completeness =
      slots ? 100.0 * double(slots - st.dropped_positions) / double(slots) : 0;

  std::printf(
      "%zu wire frames: %zu ok, %zu bad fcs, %zu filtered, %zu malformed\n",
      raw.size(), verdicts.ok, verdicts.bad_fcs, verdicts.not_ours,
      verdicts.malformed);
  std::printf(
      "%d video frames (completeness %.1f%%), %zu audio bytes, "
      "%zu rejected payloads, %zu out of order, %zu seq gaps\n",
      st.frames_completed, completeness, audio.size(), st.rejected,
      st.out_of_order, st.seq_gaps);
  std::printf("mean video payload %.1f B, ratio %.1f\n",
              st.mean_video_payload(), st.compression_ratio());

  write_json_report(opt.json_path,
                    {{"command", "decode"},
                     {"input", args.input},
                     {"wire_frames", raw.size()},
                     {"parse",
                      {{"ok", verdicts.ok},
                       {"bad_fcs", verdicts.bad_fcs},
                       {"not_ours", verdicts.not_ours},
                       {"malformed", verdicts.malformed}}},
                     {"frames_completed", st.frames_completed},
                     {"completeness_percent", completeness},
                     {"dropped_positions", st.dropped_positions},
                     {"rejected_payloads", st.rejected},
                     {"out_of_order", st.out_of_order},
                     {"seq_gaps", st.seq_gaps},
                     {"audio_bytes", audio.size()},
                     {"mean_video_payload", st.mean_video_payload()},
                     {"compression_ratio", st.compression_ratio()},
                     {"frames", frame_reports}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// send / receive: live UDP. The wire frames a capture would hold are the
// hardware's view; on a host the kernel owns the headers, so the live path
// carries just the datagram (kind + seq + data) and the receiver can
// re-frame for offline analysis.

struct SendArgs {
  std::vector<std::string> inputs;
  std::string host = "127.0.0.1";
  std::string audio;
  int repeat = 1;
  bool rgb565 = false;
};

int cmd_send(const Options& opt, const SendArgs& args) {
  int want_w = 0, want_h = 0;
  parse_geometry(opt.geometry, want_w, want_h);
  const CodecTables tables = make_tables(opt);
  if (opt.port < 1 || opt.port > 65535)
    throw IoError("port out of range: " + std::to_string(opt.port));
  if (args.repeat < 1) throw IoError("--repeat must be at least 1");

  std::vector<uint8_t> pcm;
  if (!args.audio.empty()) {
    std::ifstream in(args.audio, std::ios::binary);
    if (!in) throw IoError("cannot read audio file: " + args.audio);
    pcm.assign(std::istreambuf_iterator<char>(in), {});
  }
  AudioPacketizeResult audio = audio_packetize(pcm);

  UdpSender sender(args.host, uint16_t(opt.port));
  BoundedQueue<std::vector<uint8_t>> queue(256);
  size_t sent = 0;
  std::thread tx([&] {
    while (auto datagram = queue.pop()) {
      sender.send(*datagram);
      ++sent;
    }
  });

  const auto frame_interval =
      std::chrono::duration<double>(opt.fps > 0 ? 1.0 / opt.fps : 0.0);
  auto next_deadline = std::chrono::steady_clock::now();
  uint8_t seq = 0;
  size_t frames_sent = 0;

  for (int pass = 0; pass < args.repeat; ++pass) {
    size_t audio_cursor = 0;
    for (size_t i = 0; i < args.inputs.size(); ++i) {
      RgbFrame frame = read_image(args.inputs[i], want_w, want_h);
      EncodeResult res = encode_frame(frame, tables, seq, args.rgb565);
      seq = uint8_t(seq + res.packets.size());
      for (const Packet& p : res.packets)
        queue.push(datagram_serialize(p.meta, p.data));

      size_t audio_until =
          audio.chunks.size() * (i + 1) / args.inputs.size();
      for (; audio_cursor < audio_until; ++audio_cursor) {
        PacketMeta meta{PacketKind::Audio, seq};
        seq = uint8_t(seq + 1);
        queue.push(datagram_serialize(meta, audio.chunks[audio_cursor]));
      }
      ++frames_sent;

      if (opt.pace) {
        next_deadline += std::chrono::duration_cast<
            std::chrono::steady_clock::duration>(frame_interval);
        std::this_thread::sleep_until(next_deadline);
      }
    }
  }
  queue.close();
  tx.join();

  std::printf("sent %zu datagrams (%zu frames) to %s:%d\n", sent, frames_sent,
              args.host.c_str(), opt.port);
  write_json_report(opt.json_path, {{"command", "send"},
                                    {"host", args.host},
                                    {"port", opt.port},
                                    {"datagrams", sent},
                                    {"frames", frames_sent},
                                    {"paced", opt.pace}});
  return kExitOk;
}

struct ReceiveArgs {
  std::string output;       // capture path
  std::string output_dir;   // decoded frames
  std::string format = "png";
  std::string audio_out;
  int timeout_ms = 2000;
  long max_packets = -1;
};

int cmd_receive(const Options& opt, const ReceiveArgs& args) {
  if (args.output.empty() && args.output_dir.empty())
    throw IoError("receive needs --output (capture) or --output-dir (frames)");
  if (opt.port < 0 || opt.port > 65535)
    throw IoError("port out of range: " + std::to_string(opt.port));

  UdpReceiver receiver(uint16_t(opt.port));
  std::printf("listening on udp port %u\n", receiver.port());
  std::fflush(stdout);

  BoundedQueue<std::vector<uint8_t>> queue(256);
  std::thread rx([&] {
    long seen = 0;
    while (args.max_packets < 0 || seen < args.max_packets) {
      auto datagram =
          receiver.receive(std::chrono::milliseconds(args.timeout_ms));
      if (!datagram) break;  // idle: sender is done
      if (!queue.push(std::move(*datagram))) break;
      ++seen;
    }
    queue.close();
  });

  const WireConfig wire = make_wire_config(opt);
  std::optional<CaptureWriter> writer;
  if (!args.output.empty()) writer.emplace(args.output);

  int width = 0, height = 0;
  parse_geometry(opt.geometry, width, height);
  Reassembler reasm(width, height, make_tables(opt));

  size_t received = 0, oversize = 0;
  while (auto datagram = queue.pop()) {
    ++received;
    PacketMeta meta;
    std::vector<uint8_t> data;
    datagram_parse(*datagram, meta, data);
    if (writer) {
      if (data.size() > kMaxDataSize) {
        ++oversize;  // cannot be framed; never produced by this tool
        continue;
      }
      writer->write(build_frame(meta, data, wire));
    }
    if (!args.output_dir.empty()) reasm.push(meta, data);
  }
  rx.join();
  if (writer) writer->close();

  json report{{"command", "receive"},
              {"port", receiver.port()},
              {"datagrams", received},
              {"oversize_dropped", oversize}};

  if (!args.output_dir.empty()) {
    reasm.finish();
    std::vector<RgbFrame> frames = reasm.take_frames();
    std::filesystem::create_directories(args.output_dir);
    for (size_t i = 0; i < frames.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%04zu.%s", i,
                    args.format.c_str());
      write_image(args.output_dir + "/" + name, frames[i]);
    }
    std::vector<uint8_t> audio = reasm.take_audio();
    if (!args.audio_out.empty()) {
      std::ofstream out(args.audio_out, std::ios::binary);
      if (!out) throw IoError("cannot write audio: " + args.audio_out);
      out.write(reinterpret_cast<const char*>(audio.data()),
                std::streamsize(audio.size()));
    }
    const StreamStats& st = reasm.stats();
    std::printf(
        "received %zu datagrams, %d frames, %zu audio bytes, "
        "%zu seq gaps, %zu out of order\n",
        received, st.frames_completed, audio.size(), st.seq_gaps,
        st.out_of_order);
    report["frames_completed"] = st.frames_completed;
    report["audio_bytes"] = audio.size();
    report["seq_gaps"] = st.seq_gaps;
    report["out_of_order"] = st.out_of_order;
  } else {
    std::printf("received %zu datagrams -> %s\n", received,
                args.output.c_str());
  }
  write_json_report(opt.json_path, report);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze: dissect a capture or sniffer CSV.

struct AnalyzeArgs {
  std::string input;
  bool per_frame = false;
};

int cmd_analyze(const Options& opt, const AnalyzeArgs& args) {
  const WireConfig wire = make_wire_config(opt);
  std::vector<FrameBytes> raw = read_frames_auto(args.input);
  if (raw.empty()) throw IoError("no frames in: " + args.input);

  ParseCounts verdicts;
  size_t video = 0, audio = 0;
  size_t video_payload = 0, min_payload = SIZE_MAX, max_payload = 0;
  // Histogram over video payload sizes; upper bucket edges.
  const size_t edges[] = {64, 128, 256, 512, 1024, kMaxDataSize + 1};
  size_t histogram[std::size(edges)] = {};
  std::vector<bool> positions_seen(256, false);

  if (args.per_frame)
    std::printf("%5s %5s %-9s %-7s %3s %4s %7s\n", "#", "len", "verdict",
                "kind", "seq", "pos", "payload");

  for (size_t i = 0; i < raw.size(); ++i) {
    ParsedFrame parsed;
    ParseStatus status = parse_frame(raw[i], wire, parsed);
    verdicts.count(status);

    FrameFields fields;
    bool dissected = dissect_frame(raw[i], fields);

    if (status == ParseStatus::Ok) {
      if (parsed.meta.kind == PacketKind::Video) {
        ++video;
        video_payload += parsed.data.size();
        min_payload = std::min(min_payload, parsed.data.size());
        max_payload = std::max(max_payload, parsed.data.size());
        for (size_t b = 0; b < std::size(edges); ++b)
          if (parsed.data.size() < edges[b]) {
            ++histogram[b];
            break;
          }
        if (!parsed.data.empty()) positions_seen[parsed.data[0]] = true;
      } else {
        ++audio;
      }
    }

    if (args.per_frame) {
      char pos[8] = "-";
      if (status == ParseStatus::Ok && parsed.meta.kind == PacketKind::Video &&
          !parsed.data.empty())
        std::snprintf(pos, sizeof pos, "%u", parsed.data[0]);
      std::printf("%5zu %5zu %-9s %-7s %3u %4s %7zu\n", i, raw[i].size(),
                  std::string(to_string(status)).c_str(),
                  dissected ? kind_name(fields.kind) : "-",
                  dissected ? fields.seq : 0, pos,
                  status == ParseStatus::Ok ? parsed.data.size() : 0);
    }
  }

  double mean = video ? double(video_payload) / double(video) : 0.0;
  double ratio = mean > 0 ? (kRawPacketBits / 8.0) / mean : 0.0;
  int distinct_positions =
      int(std::count(positions_seen.begin(), positions_seen.end(), true));

  std::printf("%zu frames: %zu ok, %zu bad fcs, %zu filtered, %zu malformed\n",
              raw.size(), verdicts.ok, verdicts.bad_fcs, verdicts.not_ours,
              verdicts.malformed);
  std::printf("%zu video, %zu audio; %d distinct positions\n", video, audio,
              distinct_positions);
  if (video) {
    std::printf(
        "video payload: mean %.1f B, min %zu, max %zu, "
        "ratio %.1f vs %.0f B worst case\n",
        mean, min_payload, max_payload, ratio, kRawPacketBits / 8.0);
    size_t lo = 0;
    for (size_t b = 0; b < std::size(edges); ++b) {
      if (histogram[b])
        std::printf("  [%4zu, %4zu): %zu\n", lo, edges[b], histogram[b]);
      lo = edges[b];
    }
  }

  json hist = json::array();
  size_t lo = 0;
  for (size_t b = 0; b < std::size(edges); ++b) {
    hist.push_back({{"lo", lo}, {"hi", edges[b]}, {"count", histogram[b]}});
    lo = edges[b];
  }
  write_json_report(
      opt.json_path,
      {{"command", "analyze"},
       {"input", args.input},
       {"frames", raw.size()},
       {"parse",
        {{"ok", verdicts.ok},
         {"bad_fcs", verdicts.bad_fcs},
         {"not_ours", verdicts.not_ours},
         {"malformed", verdicts.malformed}}},
       {"video_packets", video},
       {"audio_packets", audio},
       {"distinct_positions", distinct_positions},
       {"mean_video_payload", mean},
       {"min_video_payload", video ? min_payload : 0},
       {"max_video_payload", max_payload},
       {"compression_ratio", ratio},
       {"payload_histogram", hist}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate: impair a capture.

struct SimulateArgs {
  std::string input;
  std::string output;
};

int cmd_simulate(const Options& opt, const SimulateArgs& args) {
  if (opt.drop < 0.0 || opt.drop > 1.0)
    throw IoError("--drop must be in [0, 1]");
  if (opt.reorder < 1) throw IoError("--reorder must be at least 1");

  std::vector<FrameBytes> raw = read_frames_auto(args.input);
  // Impairment is content-blind, so raw frames ride through the packet
  // impairment routine unchanged; only survival and order are decided here.
  std::vector<Packet> carrier(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) carrier[i].data = std::move(raw[i]);
  carrier = impair(std::move(carrier), opt.drop, opt.reorder, opt.seed);

  std::vector<FrameBytes> out(carrier.size());
  for (size_t i = 0; i < carrier.size(); ++i)
    out[i] = std::move(carrier[i].data);
  write_capture(args.output, out);

  std::printf("%zu of %zu frames survive (drop %.3f, window %d, seed %" PRIu64
              ") -> %s\n",
              out.size(), raw.size(), opt.drop, opt.reorder, opt.seed,
              args.output.c_str());
  write_json_report(opt.json_path, {{"command", "simulate"},
                                    {"input_frames", raw.size()},
                                    {"output_frames", out.size()},
                                    {"drop", opt.drop},
                                    {"reorder_window", opt.reorder},
                                    {"seed", opt.seed},
                                    {"output", args.output}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// cycles: throughput model over a capture.

struct CyclesArgs {
  std::string input;
};

int cmd_cycles(const Options& opt, const CyclesArgs& args) {
  const WireConfig wire = make_wire_config(opt);
  std::vector<FrameBytes> raw = read_frames_auto(args.input);
  if (raw.empty()) throw IoError("capture is empty: " + args.input);

  size_t video = 0, payload = 0;
  for (const FrameBytes& bytes : raw) {
    ParsedFrame parsed;
    if (parse_frame(bytes, wire, parsed) != ParseStatus::Ok) continue;
    if (parsed.meta.kind != PacketKind::Video) continue;
    ++video;
    payload += parsed.data.size();
  }
  if (video == 0)
    throw MalformedStreamError("no valid video packets in " + args.input);

  int width = 0, height = 0;
  parse_geometry(opt.geometry, width, height);
  int packets_per_frame = FrameAssembly(width, height).positions_total();

  double mean = double(payload) / double(video);
  CycleModel model;
  ThroughputEstimate est = estimate_throughput(model, mean, packets_per_frame);

  std::printf("%zu video packets, mean payload %.1f B\n", video, mean);
  std::printf(
      "model: %.0f cycles/packet, %d packets/frame, %.1f frames/s "
      "at %ld Hz\n",
      est.cycles_per_packet, packets_per_frame, est.fps, model.clock_hz);
  write_json_report(opt.json_path,
                    {{"command", "cycles"},
                     {"video_packets", video},
                     {"mean_payload", mean},
                     {"cycles_per_packet", est.cycles_per_packet},
                     {"packets_per_frame", packets_per_frame},
                     {"fps", est.fps},
                     {"clock_hz", model.clock_hz}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MJPEG-over-UDP streaming toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file, key=value lines; subcommand "
                                 "options go under a [subcommand] section");
  app.get_config_ptr()->envname("MJSTREAM_CONFIG");

  Options opt;
  EncodeArgs encode_args;
  DecodeArgs decode_args;
  SendArgs send_args;
  ReceiveArgs receive_args;
  AnalyzeArgs analyze_args;
  SimulateArgs simulate_args;
  CyclesArgs cycles_args;

  CLI::App* encode = app.add_subcommand(
      "encode", "Encode an image sequence into a capture of wire frames");
  encode->add_option("inputs", encode_args.inputs, "Input images (png/ppm/raw)")
      ->required()
      ->check(CLI::ExistingFile);
  encode->add_option("-o,--output", encode_args.output, "Capture file to write")
      ->required();
  encode->add_option("--audio", encode_args.audio,
                     "PCM file packetized alongside the video")
      ->check(CLI::ExistingFile);
  encode->add_flag("--rgb565", encode_args.rgb565,
                   "Emulate an RGB565 camera bus before encoding");
  CLI::Option* geom_encode = add_geometry_option(encode, opt);
  add_wire_options(encode, opt);
  add_table_options(encode, opt);
  encode->add_option("--json", opt.json_path, "Write a JSON report here");

  CLI::App* decode = app.add_subcommand(
      "decode", "Reconstruct frames and audio from a capture");
  decode->add_option("input", decode_args.input, "Capture or hex CSV")
      ->required()
      ->check(CLI::ExistingFile);
  decode->add_option("-o,--output-dir", decode_args.output_dir,
                     "Directory for decoded frames");
  decode->add_option("--format", decode_args.format,
                     "Output image format: png, ppm or rgb24")
      ->capture_default_str();
  decode->add_option("--audio-out", decode_args.audio_out,
                     "Write reassembled PCM here");
  decode->add_option("--reference", decode_args.reference,
                     "Reference image for per-frame PSNR")
      ->check(CLI::ExistingFile);
  add_geometry_option(decode, opt);
  add_wire_options(decode, opt);
  add_table_options(decode, opt);
  decode->add_option("--json", opt.json_path, "Write a JSON report here");

  CLI::App* send =
      app.add_subcommand("send", "Stream an image sequence over UDP");
  send->add_option("inputs", send_args.inputs, "Input images")
      ->required()
      ->check(CLI::ExistingFile);
  send->add_option("--host", send_args.host, "Destination host")
      ->envname("MJSTREAM_HOST")
      ->capture_default_str();
  send->add_option("--port", opt.port, "Destination UDP port")
      ->envname("MJSTREAM_PORT")
      ->capture_default_str();
  send->add_option("--audio", send_args.audio, "PCM file to stream alongside")
      ->check(CLI::ExistingFile);
  send->add_option("--repeat", send_args.repeat,
                   "Send the sequence this many times")
      ->capture_default_str();
  send->add_flag("--rgb565", send_args.rgb565,
                 "Emulate an RGB565 camera bus before encoding");
  send->add_flag("--pace", opt.pace, "Pace frames to --fps instead of bursting")
      ->envname("MJSTREAM_PACE");
  send->add_option("--fps", opt.fps, "Frame rate when pacing")
      ->capture_default_str();
  send->add_option("--seed", opt.seed, "Unused; accepted for config symmetry");
  add_geometry_option(send, opt);
  add_table_options(send, opt);
  send->add_option("--json", opt.json_path, "Write a JSON report here");

  CLI::App* receive = app.add_subcommand(
      "receive", "Receive UDP datagrams into a capture or decoded frames");
  receive->add_option("-o,--output", receive_args.output,
                      "Capture file to write (datagrams re-framed)");
  receive->add_option("--output-dir", receive_args.output_dir,
                      "Decode into this directory instead/as well");
  receive->add_option("--format", receive_args.format,
                      "Output image format: png, ppm or rgb24")
      ->capture_default_str();
  receive->add_option("--audio-out", receive_args.audio_out,
                      "Write reassembled PCM here");
  receive->add_option("--timeout-ms", receive_args.timeout_ms,
                      "Stop after this much idle time")
      ->capture_default_str();
  receive->add_option("--max-packets", receive_args.max_packets,
                      "Stop after this many datagrams (-1 = until idle)");
  add_geometry_option(receive, opt);
  add_wire_options(receive, opt);
  add_table_options(receive, opt);
  receive->add_option("--json", opt.json_path, "Write a JSON report here");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Dissect a capture or sniffer hex CSV and report statistics");
  analyze->add_option("input", analyze_args.input, "Capture or hex CSV")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_flag("--frames", analyze_args.per_frame,
                    "Print one line per frame");
  add_wire_options(analyze, opt);
  analyze->add_option("--json", opt.json_path, "Write a JSON report here");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Apply seeded drop and reorder to a capture");
  simulate->add_option("input", simulate_args.input, "Capture or hex CSV")
      ->required()
      ->check(CLI::ExistingFile);
  simulate
      ->add_option("-o,--output", simulate_args.output, "Impaired capture")
      ->required();
  simulate->add_option("--drop", opt.drop, "Drop probability in [0, 1]")
      ->envname("MJSTREAM_DROP")
      ->capture_default_str();
  simulate
      ->add_option("--reorder", opt.reorder,
                   "Reorder window (1 = keep order)")
      ->envname("MJSTREAM_REORDER")
      ->capture_default_str();
  simulate->add_option("--seed", opt.seed, "Impairment RNG seed")
      ->envname("MJSTREAM_SEED")
      ->capture_default_str();
  simulate->add_option("--json", opt.json_path, "Write a JSON report here");

  CLI::App* cycles = app.add_subcommand(
      "cycles", "Run the hardware cycle model over a capture");
  cycles->add_option("input", cycles_args.input, "Capture or hex CSV")
      ->required()
      ->check(CLI::ExistingFile);
  add_geometry_option(cycles, opt);
  add_wire_options(cycles, opt);
  cycles->add_option("--json", opt.json_path, "Write a JSON report here");

  // Lets --config (an app-level option) appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  opt.geometry_given = geom_encode->count() > 0;

  try {
    if (encode->parsed()) return cmd_encode(opt, encode_args);
    if (decode->parsed()) return cmd_decode(opt, decode_args);
    if (send->parsed()) return cmd_send(opt, send_args);
    if (receive->parsed()) return cmd_receive(opt, receive_args);
    if (analyze->parsed()) return cmd_analyze(opt, analyze_args);
    if (simulate->parsed()) return cmd_simulate(opt, simulate_args);
    if (cycles->parsed()) return cmd_cycles(opt, cycles_args);
  } catch (const MalformedStreamError& e) {
    std::fprintf(stderr, "protocol error: %s\n", e.what());
    return kExitProtocol;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitUsage;
}
