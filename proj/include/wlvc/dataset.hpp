#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlvc/graph.hpp"

namespace wlvc {

// A benchmark collection dataset: one labeled graph per indicator block.
// Vertex/edge label alphabets are normalized to 0..k-1 (sorted by raw
// value); the raw values are kept for reference.
struct TuDataset {
  std::string name;
  std::vector<Graph> graphs;
  std::vector<std::int64_t> graph_labels;
  bool has_node_labels = false, has_edge_labels = false;
  std::vector<std::int64_t> node_label_values, edge_label_values;
};

// Parses NAME_A.txt / NAME_graph_indicator.txt (+ optional NAME_node_labels,
// NAME_edge_labels, NAME_graph_labels) from dir. The prefix is discovered
// from the *_A.txt file when not given. All files are 1-indexed; both
// orientations of an undirected edge may appear and are deduplicated.
TuDataset parse_tud(const std::string& dir);
TuDataset parse_tud(const std::string& dir, const std::string& name);

struct CacheConfig {
  std::string root;  // empty picks default_cache_root()
  std::string base_url = "https://www.chrsmrrs.com/graphkerneldatasets";
  bool offline = false;
  int timeout_seconds = 60;
};

// WLVC_CACHE_DIR, else ~/.cache/wlvc, else ./wlvc-cache.
std::string default_cache_root();

// Returns the extracted dataset directory (cache layout: root/zips/NAME.zip
// + NAME.zip.sha256, root/extracted/NAME/). Idempotent: a warm cache does no
// network I/O. Downloads are written to a temp file, checksummed, and
// renamed into place. Throws io_error on network or archive trouble.
std::string fetch_dataset(const std::string& name, const CacheConfig& cfg = {});

struct DatasetStats {
  std::size_t graphs = 0;
  std::uint64_t vertices = 0, edges = 0;
  std::size_t node_label_count = 0, edge_label_count = 0, class_count = 0;
};
DatasetStats dataset_stats(const TuDataset& ds);

// Minimal zip extraction (stored + deflate entries, crc-checked); rejects
// encrypted, zip64 and path-escaping archives.
void unzip_to(const std::string& zip_path, const std::string& dest_dir);

std::string sha256_file(const std::string& path);

}  // namespace wlvc
