// probekit - offline probe-request analysis and crafting over pcap files.
//
// Subcommands:
//   parse     list probe requests with per-capture statistics
//   anonsets  anonymity-set reports under configurable field selectors
//   craft     write generic (minimal-element) probe-request bursts
//   ttt       time-to-traffic measurements and summary statistics
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probekit/anonymity.hpp"
#include "probekit/bytes.hpp"
#include "probekit/crafting.hpp"
#include "probekit/errors.hpp"
#include "probekit/export.hpp"
#include "probekit/fingerprint.hpp"
#include "probekit/pcap.hpp"
#include "probekit/probe_extract.hpp"
#include "probekit/ttt.hpp"

namespace {

using namespace probekit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_format(const std::string& text) {
  if (text == "table") return OutputFormat::Table;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw UsageError("unknown format '" + text + "' (expected table, csv or json)");
}

std::uint64_t default_seed(const CLI::Option* seed_opt, std::uint64_t seed_value) {
  if (seed_opt->count() > 0) return seed_value;
  if (const char* env = std::getenv("PROBEKIT_SEED")) {
    return std::strtoull(env, nullptr, 0);
  }
  return 0;
}

std::vector<CaptureRecord> read_resilient(std::istream& in) {
  PcapReader reader(in);
  std::vector<CaptureRecord> records;
  try {
    while (auto record = reader.next()) {
      records.push_back(std::move(*record));
    }
  } catch (const TruncatedRecord& e) {
    // Keep everything before the cut; analyses still run over it.
    std::cerr << "# warning: " << e.what() << " (continuing with " << records.size()
              << " record(s))\n";
  }
  return records;
}

std::vector<CaptureRecord> load_capture(const std::string& path) {
  if (path == "-") {
    return read_resilient(std::cin);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoFailure("cannot open '" + path + "'");
  }
  return read_resilient(in);
}

ExtractResult load_probes(const std::string& path, bool assume_fcs) {
  ExtractOptions options;
  options.assume_fcs = assume_fcs;
  const std::vector<CaptureRecord> records = load_capture(path);
  return extract_probe_requests(records, options);
}

std::string render_ssid(const ProbeRequestRecord& probe) {
  const auto ssid = probe.ssid();
  if (!ssid.has_value()) return "<none>";
  if (ssid->empty()) return "<broadcast>";
  bool printable = true;
  for (std::uint8_t b : *ssid) {
    if (b < 0x20 || b > 0x7e) printable = false;
  }
  if (printable) return std::string(ssid->begin(), ssid->end());
  return "hex:" + to_hex(*ssid);
}

// ---------------------------------------------------------------- parse ----

int cmd_parse(const std::string& path, bool uaa_only, OutputFormat format, bool assume_fcs) {
  const ExtractResult extracted = load_probes(path, assume_fcs);

  std::uint64_t uaa = 0;
  std::uint64_t laa = 0;
  for (const auto& probe : extracted.probes) {
    const MacAddress& sa = probe.header.sa;
    if (sa.locally_administered() || sa.group()) {
      ++laa;
    } else {
      ++uaa;
    }
  }

  std::vector<ProbeRequestRecord> rows;
  rows.reserve(extracted.probes.size());
  for (const auto& probe : extracted.probes) {
    const MacAddress& sa = probe.header.sa;
    if (uaa_only && (sa.locally_administered() || sa.group())) continue;
    rows.push_back(probe);
  }

  const ParseStats& stats = extracted.stats;
  if (format == OutputFormat::Json) {
    std::cout << probes_to_json(rows, stats, uaa, laa) << "\n";
    return kExitOk;
  }

  if (format == OutputFormat::Csv) {
    std::cout << "ts,sa,seq,frame_length,ssid,tags\n";
    for (const auto& probe : rows) {
      std::string tags;
      for (std::size_t i = 0; i < probe.ies.size(); ++i) {
        if (i > 0) tags += " ";
        tags += std::to_string(probe.ies[i].tag_id);
      }
      std::cout << format_seconds_ns(probe.timestamp_ns) << ',' << probe.header.sa.to_string()
                << ',' << probe.header.sequence_number() << ',' << probe.frame_length << ','
                << csv_quote(render_ssid(probe)) << ',' << csv_quote(tags) << '\n';
    }
  } else {
    std::printf("%-17s  %-17s  %5s  %5s  %s\n", "ts", "sa", "seq", "len", "ssid");
    for (const auto& probe : rows) {
      std::printf("%-17s  %-17s  %5u  %5u  %s\n", format_seconds_ns(probe.timestamp_ns).c_str(),
                  probe.header.sa.to_string().c_str(), probe.header.sequence_number(),
                  probe.frame_length, render_ssid(probe).c_str());
    }
    std::printf("\n");
  }

  std::ostream& footer = format == OutputFormat::Csv ? std::cerr : std::cout;
  footer << "# total=" << stats.total << " probe_requests=" << stats.probe_requests
         << " probe_responses=" << stats.probe_responses << " data=" << stats.data_frames
         << " other=" << stats.other << " unparseable=" << stats.unparseable << "\n";
  footer << "# probe requests from UAA=" << uaa << " LAA/group=" << laa << "\n";
  for (const auto& diagnostic : stats.diagnostics) {
    std::cerr << "# diagnostic: " << diagnostic << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------- anonsets ----

int cmd_anonsets(const std::string& path, const std::vector<std::string>& field_args,
                 const std::string& device_key, bool plot_data, OutputFormat format,
                 bool assume_fcs, bool include_laa) {
  std::vector<FieldSelector> selected;
  std::vector<std::string> args = field_args;
  if (args.empty()) {
    args = {"rates", "rates,ds", "rates,ds,ht"};
  }
  for (const std::string& arg : args) {
    auto selector = selectors::parse(arg);
    if (!selector) {
      throw UsageError("unknown field selector '" + arg + "'");
    }
    selected.push_back(std::move(*selector));
  }
  const auto policy = parse_device_key_policy(device_key);
  if (!policy) {
    throw UsageError("unknown device-key policy '" + device_key +
                     "' (expected mode, first or per-variant)");
  }

  const ExtractResult extracted = load_probes(path, assume_fcs);
  const std::vector<DeviceTraffic> traffic =
      aggregate_traffic(extracted.probes, /*uaa_only=*/!include_laa);

  const std::vector<SelectorComparisonRow> rows = compare_selectors(traffic, selected, *policy);

  std::vector<AnonymityPartition> partitions;
  std::vector<AnonymityReport> reports;
  for (const FieldSelector& selector : selected) {
    const auto devices = device_keys(traffic, selector, *policy);
    AnonymityPartition parts = partition(devices, selector);
    reports.push_back(report(parts, parts.total_devices()));
    partitions.push_back(std::move(parts));
  }

  if (plot_data) {
    // (x, y) pairs per selector: set size in requests vs devices in the set.
    for (std::size_t i = 0; i < selected.size(); ++i) {
      if (format == OutputFormat::Json) continue;
      std::cout << "# " << selected[i].name << "\n";
      for (const auto& [requests, devices] : reports[i].histogram) {
        std::cout << requests << (format == OutputFormat::Csv ? "," : " ") << devices << "\n";
      }
    }
    if (format == OutputFormat::Json) {
      std::cout << report_to_json(rows, partitions, reports) << "\n";
    }
    return kExitOk;
  }

  switch (format) {
    case OutputFormat::Json:
      std::cout << report_to_json(rows, partitions, reports) << "\n";
      break;
    case OutputFormat::Csv:
      write_partition_csv(std::cout, partitions);
      break;
    case OutputFormat::Table: {
      std::printf("%-14s  %6s  %10s  %9s  %10s  %s\n", "selector", "sets", "largest", "largest%",
                  "requests", "dominant");
      for (const auto& row : rows) {
        std::printf("%-14s  %6zu  %10llu  %9s  %10llu  %s\n", row.selector.c_str(), row.set_count,
                    static_cast<unsigned long long>(row.largest_devices),
                    format_fixed(row.largest_fraction * 100.0, 2).c_str(),
                    static_cast<unsigned long long>(row.largest_requests),
                    row.dominant_decoded.c_str());
      }
      std::printf("# devices=%llu requests_retained=%llu\n",
                  static_cast<unsigned long long>(partitions.empty() ? 0 : partitions[0].total_devices()),
                  static_cast<unsigned long long>(partitions.empty() ? 0 : partitions[0].total_requests()));
      break;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- craft ----

int cmd_craft(const std::string& sa_arg, std::uint64_t seed, const CLI::Option* seed_opt,
              const std::string& ssid, bool ssid_set, const std::string& rates_arg,
              std::uint32_t burst, double gap_ms, const std::string& seq_arg,
              const std::string& out_path, bool with_radiotap, bool dump_hex,
              double start_time_s) {
  ProbeSpec spec;
  const std::uint64_t effective_seed = default_seed(seed_opt, seed);

  if (sa_arg == "random") {
    spec.source = RandomLaaSource{effective_seed};
  } else {
    const auto mac = MacAddress::parse(sa_arg);
    if (!mac) {
      throw UsageError("invalid --sa '" + sa_arg + "' (expected aa:bb:cc:dd:ee:ff or 'random')");
    }
    spec.source = FixedSource{*mac};
  }

  if (ssid_set) spec.ssid = ssid;

  if (!rates_arg.empty()) {
    SupportedRates rates;
    std::string_view rest(rates_arg);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string token(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      bool basic = false;
      if (!token.empty() && (token.back() == 'b' || token.back() == 'B')) {
        basic = true;
        token.pop_back();
      }
      char* end = nullptr;
      const unsigned long value = std::strtoul(token.c_str(), &end, 0);
      if (token.empty() || *end != '\0' || value > 255) {
        throw UsageError("invalid rate byte '" + token + "' in --rates");
      }
      rates.rates.push_back(static_cast<std::uint8_t>(value | (basic ? 0x80 : 0)));
    }
    spec.rates = rates;
  }

  if (seq_arg == "random") {
    // Decorrelate from the address seed so both draws stay independent.
    spec.seq_policy = RandomSeq{effective_seed ^ 0x9e3779b97f4a7c15ull};
  } else {
    char* end = nullptr;
    const unsigned long value = std::strtoul(seq_arg.c_str(), &end, 0);
    if (seq_arg.empty() || *end != '\0' || value > 0x0fff) {
      throw UsageError("invalid --seq '" + seq_arg + "' (expected 0..4095 or 'random')");
    }
    spec.seq_policy = SequentialSeq{static_cast<std::uint16_t>(value)};
  }

  spec.burst_size = burst;
  spec.intra_burst_gap_ns = static_cast<std::int64_t>(gap_ms * 1e6);
  spec.start_time_ns = static_cast<std::int64_t>(start_time_s * 1e9);

  std::vector<CaptureRecord> records;
  try {
    records = build_burst(spec, with_radiotap);
  } catch (const InvalidSpec& e) {
    throw UsageError(e.what());
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw IoFailure("cannot open '" + out_path + "' for writing");
  }
  write_capture(records, with_radiotap ? kLinkTypeRadiotap : kLinkTypeIeee80211, out);

  for (std::size_t i = 0; i < records.size(); ++i) {
    std::printf("frame %zu: %zu bytes at t=%s\n", i, records[i].payload.size(),
                format_seconds_ns(records[i].timestamp_ns).c_str());
  }
  if (dump_hex && !records.empty()) {
    std::printf("frame 0 hex: %s\n", to_hex(records[0].payload).c_str());
  }
  std::printf("wrote %zu frame(s) to %s\n", records.size(), out_path.c_str());
  return kExitOk;
}

// ------------------------------------------------------------------ ttt ----

int cmd_ttt(const std::string& path, const std::string& ap_arg, double window_s, double gap_s,
            OutputFormat format, bool assume_fcs, bool include_null_data, bool population_std) {
  TtTConfig config;
  if (!ap_arg.empty()) {
    const auto ap = MacAddress::parse(ap_arg);
    if (!ap) {
      throw UsageError("invalid --ap '" + ap_arg + "'");
    }
    config.ap_filter = *ap;
  }
  config.lookback_window_ns = static_cast<std::int64_t>(window_s * 1e9);
  config.min_gap_between_attempts_ns = static_cast<std::int64_t>(gap_s * 1e9);
  if (config.lookback_window_ns <= 0) {
    throw UsageError("--window-s must be positive");
  }

  std::vector<CaptureRecord> records = load_capture(path);
  std::sort(records.begin(), records.end(), [](const CaptureRecord& a, const CaptureRecord& b) {
    return a.timestamp_ns < b.timestamp_ns;
  });

  ClassifyOptions classify_options;
  classify_options.assume_fcs = assume_fcs;
  classify_options.include_null_data = include_null_data;
  const std::vector<LinkEvent> events = classify(records, classify_options);
  const MeasureResult result = measure(events, config);

  std::vector<double> durations;
  durations.reserve(result.measurements.size());
  for (const auto& m : result.measurements) durations.push_back(m.duration_s());

  SummaryStats summary;
  const bool have_summary = !durations.empty();
  if (have_summary) summary = stats(durations, population_std);

  switch (format) {
    case OutputFormat::Json:
      std::cout << ttt_to_json(result.measurements, have_summary ? &summary : nullptr,
                               population_std)
                << "\n";
      break;
    case OutputFormat::Csv:
      write_ttt_csv(std::cout, result.measurements);
      break;
    case OutputFormat::Table: {
      std::printf("%-17s  %-17s  %12s  %12s  %10s  %s\n", "station", "ap", "start", "end",
                  "duration_s", "degraded");
      for (const auto& m : result.measurements) {
        std::printf("%-17s  %-17s  %12s  %12s  %10s  %s\n", m.station.to_string().c_str(),
                    m.ap.to_string().c_str(), format_seconds_ns(m.start_ns).c_str(),
                    format_seconds_ns(m.end_ns).c_str(),
                    format_seconds_ns(m.end_ns - m.start_ns).c_str(),
                    m.degraded ? "yes" : "no");
      }
      if (have_summary) {
        std::printf("\n%-6s  %-12s  %-8s  %s\n", "runs", "mean_ttt_s", "median", "stddev");
        std::printf("%-6zu  %-12s  %-8s  %s\n", result.measurements.size(),
                    format_fixed(summary.mean, 2).c_str(), format_fixed(summary.median, 2).c_str(),
                    format_fixed(summary.stddev, 2).c_str());
      } else {
        std::printf("no measurable connection attempts\n");
      }
      break;
    }
  }

  if (format != OutputFormat::Table && !have_summary) {
    std::cerr << "# warning: no measurable connection attempts\n";
  }
  for (const auto& diagnostic : result.diagnostics) {
    std::cerr << "# diagnostic: " << diagnostic << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probekit - probe-request anonymity analysis, crafting and timing over pcap"};
  app.require_subcommand(1);

  // parse
  std::string parse_path;
  bool parse_uaa_only = false;
  std::string parse_format_arg = "table";
  bool parse_assume_fcs = false;
  auto* parse_cmd = app.add_subcommand("parse", "List probe requests with capture statistics");
  parse_cmd->add_option("pcap", parse_path, "capture file, or - for stdin")->required();
  parse_cmd->add_flag("--uaa-only", parse_uaa_only, "keep only universally administered sources");
  parse_cmd->add_option("--format", parse_format_arg, "table, csv or json");
  parse_cmd->add_flag("--assume-fcs", parse_assume_fcs,
                      "treat frames as FCS-terminated when flags are missing");

  // anonsets
  std::string anon_path;
  std::vector<std::string> anon_fields;
  std::string anon_device_key = "mode";
  bool anon_plot = false;
  std::string anon_format_arg = "table";
  bool anon_assume_fcs = false;
  bool anon_include_laa = false;
  auto* anon_cmd = app.add_subcommand("anonsets", "Anonymity-set reports per field selector");
  anon_cmd->add_option("pcap", anon_path, "capture file, or - for stdin")->required();
  anon_cmd->add_option("--fields", anon_fields,
                       "selector preset or tag list (repeatable); default rates / rates,ds / rates,ds,ht");
  anon_cmd->add_option("--device-key", anon_device_key, "mode, first or per-variant");
  anon_cmd->add_flag("--plot-data", anon_plot, "emit (requests, devices) pairs per set");
  anon_cmd->add_option("--format", anon_format_arg, "table, csv or json");
  anon_cmd->add_flag("--assume-fcs", anon_assume_fcs);
  anon_cmd->add_flag("--include-laa", anon_include_laa,
                     "keep locally administered sources instead of the UAA-only prune");

  // craft
  std::string craft_sa = "random";
  std::uint64_t craft_seed = 0;
  std::string craft_ssid;
  std::string craft_rates;
  std::uint32_t craft_burst = 1;
  double craft_gap_ms = 20.0;
  std::string craft_seq = "0";
  std::string craft_out;
  bool craft_radiotap = false;
  bool craft_dump_hex = false;
  double craft_start_s = 0.0;
  auto* craft_cmd = app.add_subcommand("craft", "Write generic probe-request bursts to pcap");
  craft_cmd->add_option("--sa", craft_sa, "source address or 'random'");
  auto* craft_seed_opt =
      craft_cmd->add_option("--seed", craft_seed, "seed for randomized address/sequence");
  auto* craft_ssid_opt = craft_cmd->add_option("--ssid", craft_ssid, "directed SSID (default: empty/undirected)");
  craft_cmd->add_option("--rates", craft_rates,
                        "comma-separated rate bytes, 'b' suffix sets the basic flag (default 2,4,11,22)");
  craft_cmd->add_option("--burst", craft_burst, "frames per burst");
  craft_cmd->add_option("--gap-ms", craft_gap_ms, "intra-burst gap in milliseconds");
  craft_cmd->add_option("--seq", craft_seq, "starting sequence number or 'random'");
  craft_cmd->add_option("-o,--out", craft_out, "output pcap path")->required();
  craft_cmd->add_flag("--radiotap", craft_radiotap, "prepend a minimal radiotap header");
  craft_cmd->add_flag("--dump-hex", craft_dump_hex, "print frame 0 as hex");
  craft_cmd->add_option("--start-time", craft_start_s, "timestamp of frame 0 in seconds");

  // ttt
  std::string ttt_path;
  std::string ttt_ap;
  double ttt_window_s = 30.0;
  double ttt_gap_s = 10.0;
  std::string ttt_format_arg = "table";
  bool ttt_assume_fcs = false;
  bool ttt_include_null = false;
  bool ttt_population = false;
  auto* ttt_cmd = app.add_subcommand("ttt", "Time-to-traffic per connection attempt");
  ttt_cmd->add_option("pcap", ttt_path, "capture file, or - for stdin")->required();
  ttt_cmd->add_option("--ap", ttt_ap, "restrict to one AP BSSID");
  ttt_cmd->add_option("--window-s", ttt_window_s, "lookback window in seconds");
  ttt_cmd->add_option("--gap-s", ttt_gap_s, "inactivity gap separating attempts");
  ttt_cmd->add_option("--format", ttt_format_arg, "table, csv or json");
  ttt_cmd->add_flag("--assume-fcs", ttt_assume_fcs);
  ttt_cmd->add_flag("--include-null-data", ttt_include_null,
                    "let null-function data frames end a measurement");
  ttt_cmd->add_flag("--population-std", ttt_population, "population instead of sample stddev");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (parse_cmd->parsed()) {
      return cmd_parse(parse_path, parse_uaa_only, parse_format(parse_format_arg),
                       parse_assume_fcs);
    }
    if (anon_cmd->parsed()) {
      return cmd_anonsets(anon_path, anon_fields, anon_device_key, anon_plot,
                          parse_format(anon_format_arg), anon_assume_fcs, anon_include_laa);
    }
    if (craft_cmd->parsed()) {
      return cmd_craft(craft_sa, craft_seed, craft_seed_opt, craft_ssid,
                       craft_ssid_opt->count() > 0, craft_rates, craft_burst, craft_gap_ms,
                       craft_seq, craft_out, craft_radiotap, craft_dump_hex, craft_start_s);
    }
    if (ttt_cmd->parsed()) {
      return cmd_ttt(ttt_path, ttt_ap, ttt_window_s, ttt_gap_s, parse_format(ttt_format_arg),
                     ttt_assume_fcs, ttt_include_null, ttt_population);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
