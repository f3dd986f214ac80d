#include "cascadelab/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "cascadelab/error.hpp"

namespace cascadelab {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(line_no, split_fields(line));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

double parse_probability(std::string_view field, std::size_t line_no, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line_no, std::string("cannot parse ") + what + " '" + std::string(field) + "'");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ParseError(line_no, std::string(what) + " " + std::string(field) + " outside [0,1]");
  }
  return value;
}

}  // namespace

NetworkDocument build_from_edge_list(std::string_view text, bool directed) {
  NetworkBuilder builder;
  std::vector<double> tau;

  auto add = [&](NodeId u, NodeId v, double t, std::size_t line_no) {
    if (auto existing = builder.find_arc(u, v)) {
      if (tau[*existing] != t) throw ParseError(line_no, "duplicate arc with conflicting tau");
      return;
    }
    builder.add_arc(u, v);
    tau.push_back(t);
  };

  for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.empty()) return;
    if (f.size() > 3) throw ParseError(line_no, "expected 'u v [tau]'");
    if (f.size() == 1) {
      builder.add_node(f[0]);
      return;
    }
    if (f[0] == f[1]) throw ParseError(line_no, "self-loop on node '" + std::string(f[0]) + "'");
    double t = f.size() == 3 ? parse_probability(f[2], line_no, "tau") : 1.0;
    NodeId u = builder.add_node(f[0]);
    NodeId v = builder.add_node(f[1]);
    add(u, v, t, line_no);
    if (!directed) add(v, u, t, line_no);
  });

  NetworkDocument doc;
  doc.network = std::move(builder).build();
  doc.params.sigma.assign(doc.network.node_count(), 0.0);
  doc.params.gamma.assign(doc.network.node_count(), 0.0);
  doc.params.tau = std::move(tau);
  return doc;
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string write_edge_list(const ContactNetwork& net, const EpidemicParams& params) {
  validate(net, params);
  std::string out;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    out += net.name(v);
    out += '\n';
  }
  for (ArcId e = 0; e < net.arc_count(); ++e) {
    const Arc& a = net.arc(e);
    out += net.name(a.from);
    out += ' ';
    out += net.name(a.to);
    out += ' ';
    out += format_real(params.tau[e]);
    out += '\n';
  }
  return out;
}

void apply_params(std::string_view text, const ContactNetwork& net, EpidemicParams& params) {
  if (params.sigma.size() != net.node_count() || params.gamma.size() != net.node_count()) {
    throw Error("params do not match the network");
  }
  for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.empty()) return;
    if (f.size() != 3) throw ParseError(line_no, "expected 'v sigma gamma'");
    auto v = net.find_node(f[0]);
    if (!v) throw ParseError(line_no, "unknown node '" + std::string(f[0]) + "'");
    params.sigma[*v] = parse_probability(f[1], line_no, "sigma");
    params.gamma[*v] = parse_probability(f[2], line_no, "gamma");
  });
}

std::string write_params(const ContactNetwork& net, const EpidemicParams& params) {
  validate(net, params);
  std::string out;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    out += net.name(v) + ' ' + format_real(params.sigma[v]) + ' ' + format_real(params.gamma[v]) + '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot write " + path.string());
  }
}

}  // namespace cascadelab
