#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "wlvc/dataset.hpp"

#include <zlib.h>

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <utility>

#include <httplib.h>

#include "wlvc/errors.hpp"

namespace fs = std::filesystem;

namespace wlvc {

namespace {

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw io_error("parse_tud: cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  while (!out.empty() && out.back().find_first_not_of(" \t") == std::string::npos)
    out.pop_back();
  return out;
}

std::vector<std::int64_t> split_ints(const std::string& line, std::size_t lineno,
                                     const fs::path& path) {
  std::string s = line;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<std::int64_t> vals;
  std::int64_t v;
  while (in >> v) vals.push_back(v);
  std::string rest;
  if (in.fail() && !in.eof() && (in.clear(), in >> rest, !rest.empty()))
    throw parse_error("parse_tud: bad token on line " + std::to_string(lineno) + " of " +
                      path.filename().string());
  return vals;
}

// One integer per non-blank line.
std::vector<std::int64_t> read_int_column(const fs::path& path) {
  std::vector<std::int64_t> out;
  auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto vals = split_ints(lines[i], i + 1, path);
    if (vals.empty()) continue;
    if (vals.size() != 1)
      throw parse_error("parse_tud: expected one value on line " + std::to_string(i + 1) +
                        " of " + path.filename().string());
    out.push_back(vals[0]);
  }
  return out;
}

// Sorted distinct raw values; raw -> dense index.
std::map<std::int64_t, std::uint32_t> dense_alphabet(const std::vector<std::int64_t>& raw,
                                                     std::vector<std::int64_t>& values) {
  std::set<std::int64_t> seen(raw.begin(), raw.end());
  values.assign(seen.begin(), seen.end());
  std::map<std::int64_t, std::uint32_t> idx;
  for (std::size_t i = 0; i < values.size(); ++i) idx[values[i]] = static_cast<std::uint32_t>(i);
  return idx;
}

std::string inflate_raw(const unsigned char* data, std::uint32_t n, std::uint32_t hint) {
  z_stream s{};
  if (inflateInit2(&s, -MAX_WBITS) != Z_OK)
    throw internal_error("unzip_to: inflate initialization failed");
  std::string out;
  out.reserve(hint);
  s.next_in = const_cast<unsigned char*>(data);
  s.avail_in = n;
  unsigned char chunk[1 << 16];
  int rc = Z_OK;
  do {
    s.next_out = chunk;
    s.avail_out = sizeof chunk;
    rc = inflate(&s, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&s);
      throw io_error("unzip_to: corrupt deflate stream");
    }
    out.append(reinterpret_cast<char*>(chunk), sizeof chunk - s.avail_out);
    if (rc == Z_OK && s.avail_in == 0 && s.avail_out != 0) {
      inflateEnd(&s);
      throw io_error("unzip_to: truncated deflate stream");
    }
  } while (rc != Z_STREAM_END);
  inflateEnd(&s);
  return out;
}

std::uint16_t rd16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t rd32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

bool safe_entry_name(const std::string& name) {
  if (name.empty() || name[0] == '/' || name.find('\\') != std::string::npos) return false;
  std::size_t pos = 0;
  while (pos <= name.size()) {
    std::size_t next = name.find('/', pos);
    std::string part = name.substr(pos, next == std::string::npos ? next : next - pos);
    if (part == "..") return false;
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return true;
}

void write_binary(const fs::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw io_error("unzip_to: cannot write " + path.string());
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw io_error("unzip_to: short write to " + path.string());
}

void download(const std::string& url, const fs::path& out, int timeout_seconds) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw io_error("fetch_dataset: malformed url " + url);
  std::string scheme = url.substr(0, scheme_end);
  std::string rest = url.substr(scheme_end + 3);
  auto slash = rest.find('/');
  std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
  std::string path = slash == std::string::npos ? std::string("/") : rest.substr(slash);
  std::string host = hostport;
  int port = scheme == "https" ? 443 : 80;
  if (auto colon = hostport.rfind(':'); colon != std::string::npos) {
    host = hostport.substr(0, colon);
    port = std::stoi(hostport.substr(colon + 1));
  }
  if (host.empty()) throw io_error("fetch_dataset: malformed url " + url);

  auto run = [&](auto& cli) {
    cli.set_connection_timeout(timeout_seconds, 0);
    cli.set_read_timeout(timeout_seconds, 0);
    cli.set_follow_location(true);
    return cli.Get(path.c_str());
  };
  httplib::Result res;
  if (scheme == "https") {
    httplib::SSLClient cli(host, port);
    cli.enable_server_certificate_verification(false);
    res = run(cli);
  } else if (scheme == "http") {
    httplib::Client cli(host, port);
    res = run(cli);
  } else {
    throw io_error("fetch_dataset: unsupported url scheme " + scheme);
  }
  if (!res)
    throw io_error("fetch_dataset: request to " + url + " failed (" +
                   httplib::to_string(res.error()) + ")");
  if (res->status != 200)
    throw io_error("fetch_dataset: " + url + " returned HTTP " + std::to_string(res->status));

  fs::path tmp = out;
  tmp += ".part";
  write_binary(tmp, res->body);
  std::string digest = sha256_file(tmp.string());
  fs::rename(tmp, out);
  fs::path sumfile = out;
  sumfile += ".sha256";
  write_binary(sumfile, digest + "  " + out.filename().string() + "\n");
}

std::mutex fetch_mu;

}  // namespace

TuDataset parse_tud(const std::string& dir) {
  std::vector<std::string> prefixes;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::string fn = e.path().filename().string();
    const std::string suffix = "_A.txt";
    if (fn.size() > suffix.size() && fn.compare(fn.size() - suffix.size(), suffix.size(), suffix) == 0)
      prefixes.push_back(fn.substr(0, fn.size() - suffix.size()));
  }
  if (prefixes.empty()) throw io_error("parse_tud: no *_A.txt file in " + dir);
  std::sort(prefixes.begin(), prefixes.end());
  return parse_tud(dir, prefixes.front());
}

TuDataset parse_tud(const std::string& dir, const std::string& name) {
  fs::path base(dir);
  fs::path a_path = base / (name + "_A.txt");
  fs::path ind_path = base / (name + "_graph_indicator.txt");
  fs::path nl_path = base / (name + "_node_labels.txt");
  fs::path el_path = base / (name + "_edge_labels.txt");
  fs::path gl_path = base / (name + "_graph_labels.txt");

  auto ids = read_int_column(ind_path);
  if (ids.empty()) throw parse_error("parse_tud: empty graph indicator");
  const std::size_t total = ids.size();
  if (ids[0] != 1) throw parse_error("parse_tud: graph indicator must start at 1");
  for (std::size_t i = 1; i < total; ++i) {
    if (ids[i] < ids[i - 1] || ids[i] > ids[i - 1] + 1)
      throw parse_error("parse_tud: graph indicator not contiguous at vertex " +
                        std::to_string(i + 1));
  }
  const std::size_t num_graphs = static_cast<std::size_t>(ids.back());
  std::vector<std::size_t> start(num_graphs, 0), count(num_graphs, 0);
  for (std::size_t i = 0; i < total; ++i) ++count[static_cast<std::size_t>(ids[i] - 1)];
  for (std::size_t g = 1; g < num_graphs; ++g) start[g] = start[g - 1] + count[g - 1];

  std::vector<std::int64_t> raw_node_labels;
  if (fs::exists(nl_path)) {
    raw_node_labels = read_int_column(nl_path);
    if (raw_node_labels.size() != total)
      throw parse_error("parse_tud: node label count does not match vertex count");
  }

  auto a_lines = read_lines(a_path);
  std::vector<std::pair<std::int64_t, std::int64_t>> raw_edges;
  for (std::size_t i = 0; i < a_lines.size(); ++i) {
    auto vals = split_ints(a_lines[i], i + 1, a_path);
    if (vals.empty()) continue;
    if (vals.size() != 2)
      throw parse_error("parse_tud: expected two endpoints on line " + std::to_string(i + 1) +
                        " of " + a_path.filename().string());
    raw_edges.emplace_back(vals[0], vals[1]);
  }

  std::vector<std::int64_t> raw_edge_labels;
  if (fs::exists(el_path)) {
    raw_edge_labels = read_int_column(el_path);
    if (raw_edge_labels.size() != raw_edges.size())
      throw parse_error("parse_tud: edge label count does not match edge list");
  }

  TuDataset ds;
  ds.name = name;
  ds.has_node_labels = !raw_node_labels.empty();
  ds.has_edge_labels = !raw_edge_labels.empty();

  std::map<std::int64_t, std::uint32_t> node_idx, edge_idx;
  if (ds.has_node_labels) node_idx = dense_alphabet(raw_node_labels, ds.node_label_values);
  if (ds.has_edge_labels) edge_idx = dense_alphabet(raw_edge_labels, ds.edge_label_values);

  // Undirected edges keyed (min,max) per graph; both orientations collapse.
  using Key = std::pair<Vertex, Vertex>;
  std::vector<std::map<Key, std::uint32_t>> edges_of(num_graphs);
  constexpr std::uint32_t kNoLabel = 0xffffffffu;
  for (std::size_t i = 0; i < raw_edges.size(); ++i) {
    auto [ru, rv] = raw_edges[i];
    if (ru < 1 || rv < 1 || ru > static_cast<std::int64_t>(total) ||
        rv > static_cast<std::int64_t>(total))
      throw parse_error("parse_tud: vertex index out of range on line " + std::to_string(i + 1) +
                        " of " + a_path.filename().string());
    std::size_t gu = static_cast<std::size_t>(ids[static_cast<std::size_t>(ru - 1)] - 1);
    std::size_t gv = static_cast<std::size_t>(ids[static_cast<std::size_t>(rv - 1)] - 1);
    if (gu != gv)
      throw parse_error("parse_tud: edge crosses graph boundary on line " + std::to_string(i + 1));
    Vertex u = static_cast<Vertex>(static_cast<std::size_t>(ru - 1) - start[gu]);
    Vertex v = static_cast<Vertex>(static_cast<std::size_t>(rv - 1) - start[gu]);
    if (u == v)
      throw parse_error("parse_tud: self-loop on line " + std::to_string(i + 1) + " of " +
                        a_path.filename().string());
    Key key{std::min(u, v), std::max(u, v)};
    std::uint32_t lab = ds.has_edge_labels ? edge_idx.at(raw_edge_labels[i]) : kNoLabel;
    auto [it, inserted] = edges_of[gu].try_emplace(key, lab);
    if (!inserted && it->second != lab)
      throw parse_error("parse_tud: conflicting labels on duplicate edge, line " +
                        std::to_string(i + 1));
  }

  for (std::size_t g = 0; g < num_graphs; ++g) {
    std::vector<Edge> edges;
    edges.reserve(edges_of[g].size());
    for (const auto& [key, lab] : edges_of[g]) edges.push_back(key);
    Graph gr = new_graph(static_cast<Vertex>(count[g]), edges, false);
    if (ds.has_node_labels) {
      gr.labels.resize(count[g]);
      for (std::size_t v = 0; v < count[g]; ++v)
        gr.labels[v] = node_idx.at(raw_node_labels[start[g] + v]);
    }
    if (ds.has_edge_labels) {
      gr.elab.resize(count[g]);
      for (Vertex v = 0; v < gr.n; ++v) {
        gr.elab[v].resize(gr.adj[v].size());
        for (std::size_t i = 0; i < gr.adj[v].size(); ++i) {
          Vertex w = gr.adj[v][i];
          gr.elab[v][i] = edges_of[g].at({std::min(v, w), std::max(v, w)});
        }
      }
    }
    validate(gr);
    ds.graphs.push_back(std::move(gr));
  }

  if (fs::exists(gl_path)) {
    ds.graph_labels = read_int_column(gl_path);
    if (ds.graph_labels.size() != num_graphs)
      throw parse_error("parse_tud: graph label count does not match graph count");
  }
  return ds;
}

std::string default_cache_root() {
  if (const char* env = std::getenv("WLVC_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home)
    return (fs::path(home) / ".cache" / "wlvc").string();
  return "wlvc-cache";
}

std::string fetch_dataset(const std::string& name, const CacheConfig& cfg) {
  if (name.empty() ||
      name.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") !=
          std::string::npos)
    throw precondition_error("fetch_dataset: unsafe dataset name");
  std::lock_guard<std::mutex> lock(fetch_mu);
  fs::path root(cfg.root.empty() ? default_cache_root() : cfg.root);
  fs::path zips = root / "zips";
  fs::path extracted = root / "extracted";
  fs::path zip = zips / (name + ".zip");
  fs::path dest = extracted / name;

  if (fs::exists(dest / (name + "_A.txt"))) return dest.string();

  fs::create_directories(zips);
  fs::create_directories(extracted);
  if (!fs::exists(zip)) {
    if (cfg.offline)
      throw io_error("fetch_dataset: offline and " + name + " is not in the cache");
    download(cfg.base_url + "/" + name + ".zip", zip, cfg.timeout_seconds);
  }

  fs::path tmp = extracted / ("." + name + ".tmp");
  fs::remove_all(tmp);
  unzip_to(zip.string(), tmp.string());
  fs::path src;
  if (fs::exists(tmp / (name + "_A.txt"))) {
    src = tmp;
  } else if (fs::exists(tmp / name / (name + "_A.txt"))) {
    src = tmp / name;
  } else {
    fs::remove_all(tmp);
    throw io_error("fetch_dataset: archive for " + name + " lacks " + name + "_A.txt");
  }
  fs::remove_all(dest);
  fs::rename(src, dest);
  fs::remove_all(tmp);
  return dest.string();
}

DatasetStats dataset_stats(const TuDataset& ds) {
  DatasetStats st;
  st.graphs = ds.graphs.size();
  for (const auto& g : ds.graphs) {
    st.vertices += g.n;
    st.edges += g.edge_count();
  }
  st.node_label_count = ds.node_label_values.size();
  st.edge_label_count = ds.edge_label_values.size();
  std::set<std::int64_t> classes(ds.graph_labels.begin(), ds.graph_labels.end());
  st.class_count = classes.size();
  return st;
}

void unzip_to(const std::string& zip_path, const std::string& dest_dir) {
  std::ifstream f(zip_path, std::ios::binary);
  if (!f) throw io_error("unzip_to: cannot open " + zip_path);
  std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  const auto* b = reinterpret_cast<const unsigned char*>(buf.data());
  const std::size_t n = buf.size();
  if (n < 22) throw io_error("unzip_to: truncated archive");

  std::size_t eocd = std::string::npos;
  std::size_t lo = n >= 22 + 65535 ? n - 22 - 65535 : 0;
  for (std::size_t i = n - 22;; --i) {
    if (rd32(b + i) == 0x06054b50u) {
      eocd = i;
      break;
    }
    if (i == lo) break;
  }
  if (eocd == std::string::npos) throw io_error("unzip_to: end-of-archive record not found");
  std::uint16_t entries = rd16(b + eocd + 10);
  std::uint32_t cd_size = rd32(b + eocd + 12);
  std::uint32_t cd_off = rd32(b + eocd + 16);
  if (entries == 0xffff || cd_off == 0xffffffffu)
    throw io_error("unzip_to: zip64 archives are not supported");
  if (static_cast<std::size_t>(cd_off) + cd_size > n)
    throw io_error("unzip_to: central directory out of bounds");

  fs::create_directories(dest_dir);
  std::size_t p = cd_off;
  for (std::uint16_t e = 0; e < entries; ++e) {
    if (p + 46 > n || rd32(b + p) != 0x02014b50u)
      throw io_error("unzip_to: bad central directory entry");
    std::uint16_t flags = rd16(b + p + 8);
    std::uint16_t method = rd16(b + p + 10);
    std::uint32_t crc = rd32(b + p + 16);
    std::uint32_t csize = rd32(b + p + 20);
    std::uint32_t usize = rd32(b + p + 24);
    std::uint16_t nlen = rd16(b + p + 28);
    std::uint16_t xlen = rd16(b + p + 30);
    std::uint16_t clen = rd16(b + p + 32);
    std::uint32_t lho = rd32(b + p + 42);
    if (p + 46 + nlen > n) throw io_error("unzip_to: bad central directory entry");
    std::string entry(reinterpret_cast<const char*>(b + p + 46), nlen);
    p += 46u + nlen + xlen + clen;

    if (flags & 0x1u) throw io_error("unzip_to: encrypted entry " + entry);
    if (csize == 0xffffffffu || usize == 0xffffffffu)
      throw io_error("unzip_to: zip64 archives are not supported");
    if (!safe_entry_name(entry)) throw io_error("unzip_to: unsafe path " + entry);

    fs::path out = fs::path(dest_dir) / entry;
    if (!entry.empty() && entry.back() == '/') {
      fs::create_directories(out);
      continue;
    }
    fs::create_directories(out.parent_path());

    if (static_cast<std::size_t>(lho) + 30 > n || rd32(b + lho) != 0x04034b50u)
      throw io_error("unzip_to: bad local header for " + entry);
    std::size_t data = static_cast<std::size_t>(lho) + 30 + rd16(b + lho + 26) + rd16(b + lho + 28);
    if (data + csize > n) throw io_error("unzip_to: entry data out of bounds");

    std::string bytes;
    if (method == 0) {
      if (csize != usize) throw io_error("unzip_to: stored entry size mismatch in " + entry);
      bytes.assign(reinterpret_cast<const char*>(b + data), csize);
    } else if (method == 8) {
      bytes = inflate_raw(b + data, csize, usize);
    } else {
      throw io_error("unzip_to: unsupported compression method in " + entry);
    }
    if (bytes.size() != usize) throw io_error("unzip_to: size mismatch in " + entry);
    std::uint32_t got = static_cast<std::uint32_t>(
        crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size())));
    if (got != crc) throw io_error("unzip_to: crc mismatch in " + entry);
    write_binary(out, bytes);
  }
}

std::string sha256_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("sha256_file: cannot open " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw internal_error("sha256_file: digest initialization failed");
  }
  char buf[1 << 16];
  while (f) {
    f.read(buf, sizeof buf);
    if (f.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(f.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

}  // namespace wlvc
