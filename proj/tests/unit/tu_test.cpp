#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "idt/error.hpp"
#include "idt/synth.hpp"
#include "idt/syntax.hpp"
#include "idt/tu_format.hpp"

using namespace idt;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* name) {
  auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const char* text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("TU round trip") {
  const auto dir = fresh_dir("idt_tu_roundtrip");
  const auto er = gen_er_dataset(30, 7, 0.4, parse_formula("A U1 > 0"), 3);
  write_tu_dataset(er, dir, "ER");
  CHECK(load_tu_dataset(dir) == er);

  const auto dir2 = fresh_dir("idt_tu_roundtrip_ba");
  const auto ba = gen_bamultishapes(20, 4);
  write_tu_dataset(ba, dir2, "BA");
  CHECK(load_tu_dataset(dir2) == ba);
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("TU node labels, label remapping, and self-loops") {
  const auto dir = fresh_dir("idt_tu_small");
  write(dir / "X_A.txt", "1, 2\n2, 1\n2, 2\n4, 5\n5, 4\n");
  write(dir / "X_graph_indicator.txt", "1\n1\n1\n2\n2\n");
  write(dir / "X_graph_labels.txt", "-1\n1\n");
  write(dir / "X_node_labels.txt", "3\n0\n3\n0\n7\n");
  const auto ds = load_tu_dataset(dir);
  REQUIRE(ds.size() == 2);
  CHECK(ds.num_classes == 2);
  CHECK(ds.feature_count == 3);
  CHECK(ds.graphs[0].label == 0);
  CHECK(ds.graphs[1].label == 1);
  CHECK(ds.graphs[0].graph.node_count() == 3);
  CHECK(ds.graphs[0].graph.edge_count() == 1);
  CHECK(ds.graphs[1].graph.adjacent(0, 1));
  CHECK(ds.graphs[0].features.at(0, 1) == 1);  // label 3 is the second value
  CHECK(ds.graphs[1].features.at(1, 2) == 1);  // label 7 is the third
  fs::remove_all(dir);
}

TEST_CASE("TU without node labels gets one constant atom") {
  const auto dir = fresh_dir("idt_tu_plain");
  write(dir / "Y_A.txt", "1, 2\n2, 1\n");
  write(dir / "Y_graph_indicator.txt", "1\n1\n2\n");
  write(dir / "Y_graph_labels.txt", "0\n1\n");
  const auto ds = load_tu_dataset(dir);
  CHECK(ds.feature_count == 1);
  CHECK(ds.graphs[1].features.at(0, 0) == 1);
  fs::remove_all(dir);
}

TEST_CASE("TU errors") {
  const auto dir = fresh_dir("idt_tu_bad");
  CHECK_THROWS_AS(load_tu_dataset(dir), DataError);
  write(dir / "Z_A.txt", "1, 9\n");
  write(dir / "Z_graph_indicator.txt", "1\n1\n");
  write(dir / "Z_graph_labels.txt", "0\n");
  CHECK_THROWS_AS(load_tu_dataset(dir), DataError);
  write(dir / "Z_A.txt", "1, x\n");
  CHECK_THROWS_AS(load_tu_dataset(dir), DataError);
  write(dir / "Z_A.txt", "1, 2\n");
  write(dir / "Z_graph_indicator.txt", "1\n2\n");
  write(dir / "Z_graph_labels.txt", "0\n1\n");
  CHECK_THROWS_AS(load_tu_dataset(dir), DataError);  // edge across graphs
  CHECK_THROWS_AS(load_tu_dataset(dir / "missing"), DataError);
  fs::remove_all(dir);
}
