#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "ainf/cli.hpp"
#include "ainf/corpus.hpp"

using namespace ainf;
namespace fs = std::filesystem;

namespace {

const fs::path corpus_dir = AINF_CORPUS_DIR;
const fs::path data_dir = fs::path(AINF_CORPUS_DIR).parent_path() / "tests" / "data";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PresPtr corpus_category(const std::string& ref) {
  auto d = parse_document(slurp(corpus_dir / (ref + ".ainf")), corpus_category);
  return d.pres;
}

std::vector<fs::path> corpus_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(corpus_dir))
    if (e.path().extension() == ".ainf") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

DocumentError parse_error(const std::string& text) {
  try {
    parse_document(text, corpus_category);
  } catch (const DocumentError& e) {
    return e;
  }
  FAIL("document parsed: " << text);
  return DocumentError(0, 0, "");
}

std::string replace_line(std::string text, const std::string& from, const std::string& to) {
  auto p = text.find(from);
  REQUIRE(p != std::string::npos);
  return text.replace(p, from.size(), to);
}

}  // namespace

TEST_CASE("corpus files round-trip byte for byte") {
  const auto files = corpus_files();
  REQUIRE(files.size() >= 20);
  for (const auto& p : files) {
    INFO(p.filename());
    const auto text = slurp(p);
    CHECK(print_document(parse_document(text, corpus_category)) == text);
  }
}

TEST_CASE("corpus presentations match their constructors") {
  for (const auto& a : corpus::all()) {
    INFO(a.name);
    CHECK(slurp(corpus_dir / (a.name + ".ainf")) == print_document(presentation_document(a)));
  }
}

TEST_CASE("printing round-trips over finite fields") {
  for (int p : {2, 3, 5})
    for (const auto& a : corpus::all(Field::prime(p))) {
      INFO(a.name << " over F_" << p);
      const auto text = print_document(presentation_document(a));
      const auto back = parse_document(text);
      CHECK(print_document(back) == text);
      CHECK(back.field.modulus() == p);
    }
  auto ut = corpus::upper_triangular(Field::prime(3));
  ut.set_op(2, {2, 2}, Vec{{1, Scalar::in(ut.field, -1)}});
  const auto text = print_document(presentation_document(ut));
  CHECK(text.find("2*E11") != std::string::npos);
  CHECK(print_document(parse_document(text)) == text);
}

TEST_CASE("scalars must be canonical") {
  const auto base = slurp(corpus_dir / "dual_numbers.ainf");
  auto e = parse_error(replace_line(base, "unit o 1*1", "unit o 2/4*1"));
  CHECK(e.line == 9);
  CHECK(e.column == 8);
  CHECK(std::string(e.what()).find("'1/2'") != std::string::npos);

  auto z = parse_error(replace_line(base, "unit o 1*1", "unit o 0*1"));
  CHECK(z.line == 9);

  const auto f3 = print_document(presentation_document(corpus::upper_triangular(Field::prime(3))));
  auto neg = parse_error(replace_line(f3, "op 2 E11 E11 = 1*E11", "op 2 E11 E11 = -2*E11"));
  CHECK(std::string(neg.what()).find("'1'") != std::string::npos);
  auto big = parse_error(replace_line(f3, "op 2 E11 E11 = 1*E11", "op 2 E11 E11 = 4*E11"));
  CHECK(std::string(big.what()).find("'1'") != std::string::npos);
}

TEST_CASE("semantic errors name the label and line") {
  const auto two = slurp(corpus_dir / "two_isomorphic.ainf");
  auto e = parse_error(replace_line(two, "op 2 g f = 1*1x", "op 2 g h = 1*1x"));
  CHECK(e.line == 16);
  CHECK(std::string(e.what()).find("'h'") != std::string::npos);

  // g f lands in Hom(x, x); 1y does not
  auto wrong = parse_error(replace_line(two, "op 2 g f = 1*1x", "op 2 g f = 1*1y"));
  CHECK(wrong.line == 16);

  auto deg = parse_error(replace_line(two, "gen f x y 0", "gen f x y 0\ngen f x y 1"));
  CHECK(deg.line == 11);

  const auto dual = slurp(corpus_dir / "dual_numbers.ainf");
  auto higher = parse_error(dual + "op 3 e e e = 1*e\n");
  CHECK(higher.line == 11);
  auto order = parse_error(replace_line(dual, "unit o 1*1", "unit o 1*e + 1*1"));
  CHECK(order.line == 9);
  auto newline = parse_error(dual.substr(0, dual.size() - 1));
  CHECK(newline.line == 10);
  auto version = parse_error(replace_line(dual, "ainf-document 1", "ainf-document 2"));
  CHECK(version.line == 1);
  CHECK(version.column == 15);
}

TEST_CASE("documents from tests/data fail with exit code 3") {
  for (const char* name : {"noncanonical_scalar", "undeclared_generator", "syntax_error", "broken_dual_numbers"}) {
    INFO(name);
    auto r = run({"validate", (data_dir / (std::string(name) + ".ainf")).string()});
    CHECK(r.code == 3);
  }
  auto broken = run({"validate", (data_dir / "broken_dual_numbers.ainf").string()});
  CHECK(broken.out.find("n=3 on (e,e,1)") != std::string::npos);
  auto scalar = run({"validate", (data_dir / "noncanonical_scalar.ainf").string()});
  CHECK(scalar.err.find("line 9, column 8") != std::string::npos);
  CHECK(run({"--no-validate", "h0", (data_dir / "broken_dual_numbers.ainf").string()}).code == 0);
  CHECK(run({"h0", (data_dir / "broken_dual_numbers.ainf").string()}).code == 3);
}

TEST_CASE("every corpus document validates") {
  for (const auto& p : corpus_files()) {
    INFO(p.filename());
    CHECK(run({"validate", p.stem().string()}).code == 0);
  }
}

TEST_CASE("exit-code table") {
  struct Row {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Row> table = {
      {{"validate", "dual_numbers"}, 0},
      {{"validate", "missing_document"}, 2},
      {{"h0", "two_isomorphic"}, 0},
      {{"h0", "massey_triple"}, 0},
      {{"h0", "k_into_dual_numbers"}, 3},
      {{"is-weq", "k_into_dual_numbers"}, 1},
      {{"is-weq", "x_into_two_isomorphic"}, 0},
      {{"is-weq", "id_dual_numbers"}, 0},
      {{"is-weq", "dual_numbers"}, 2},
      {{"is-fib", "dual_numbers_augmentation"}, 0},
      {{"is-fib", "k_into_dual_numbers"}, 1},
      {{"bar", "dual_numbers", "--max-length", "3"}, 0},
      {{"bar", "dual_numbers", "--max-length", "0"}, 2},
      {{"cobar", "bar_dual_numbers", "--max-length", "2"}, 0},
      {{"cobar", "dual_numbers"}, 2},
      {{"envelope", "dg_simplex_1", "--max-length", "3"}, 0},
      {{"gamma-check", "dual_numbers", "--max-length", "3"}, 0},
      {{"hom-complex", "id_dual_numbers", "id_dual_numbers", "--lo", "-1", "--hi", "1"}, 0},
      {{"hom-complex", "id_dual_numbers", "k_into_dual_numbers", "--lo", "0", "--hi", "1"}, 2},
      {{"nerve", "triangle_dual_numbers"}, 0},
      {{"nerve", "dual_numbers"}, 2},
      {{"horn-fill", "--n", "2", "--i", "1", "edge_one_plus_epsilon", "edge_epsilon"}, 0},
      {{"horn-fill", "--n", "2", "--i", "0", "edge_epsilon", "edge_epsilon"}, 2},
      {{"horn-fill", "--n", "2", "--i", "1", "edge_epsilon"}, 2},
      {{"max-kan", "triangle_dual_numbers"}, 0},
      {{"max-kan", "edge_epsilon"}, 1},
      {{"compose", "x_into_two_isomorphic", "two_isomorphic_collapse"}, 0},
      {{"compose", "x_into_two_isomorphic", "k_into_dual_numbers"}, 2},
      {{"hochschild", "ground_field", "--max-degree", "4"}, 0},
      {{"hochschild", "massey_triple", "--max-degree", "1"}, 0},
      {{"pi", "degree_minus_one", "--i", "1", "--cross-check"}, 0},
      {{"pi", "dual_numbers", "--i", "2", "--cross-check"}, 2},
      {{"frobnicate"}, 2},
      {{}, 2},
      {{"validate"}, 2},
      {{"bar", "dual_numbers", "--max-length", "three"}, 2},
  };
  for (const auto& row : table) {
    std::string joined;
    for (const auto& a : row.args) joined += a + " ";
    INFO(joined);
    CHECK(run(row.args).code == row.code);
  }
}

TEST_CASE("reports carry the documented content") {
  auto hh = run({"hochschild", "ground_field", "--max-degree", "4"});
  CHECK(hh.out ==
        "degree 0 slice 1 HH 1 stable yes\n"
        "degree 1 slice 1 HH 0 stable yes\n"
        "degree 2 slice 1 HH 0 stable yes\n"
        "degree 3 slice 1 HH 0 stable yes\n"
        "degree 4 slice 1 HH 0 stable yes\n");

  auto weq = run({"is-weq", "k_into_dual_numbers"});
  CHECK(weq.out.find("quasi-isomorphism") != std::string::npos);

  auto kan = run({"max-kan", "edge_one_plus_epsilon"});
  CHECK(kan.out.find("inverse 1*1 + -1*e") != std::string::npos);

  auto pi = run({"--json", "pi", "degree_minus_one", "--i", "1", "--cross-check"});
  auto j = nlohmann::json::parse(pi.out);
  CHECK(j["hh_dim"] == 1);
  CHECK(j["simplicial_dim"] == 1);
  CHECK(j["complex_degree"] == -1);
}

TEST_CASE("structured output is one JSON record per line") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"--json", "h0", "upper_triangular"},
        {"--json", "bar", "dual_numbers", "--max-length", "3"},
        {"--json", "hochschild", "dual_numbers", "--max-degree", "2", "--representatives"},
        {"--json", "max-kan", "triangle_dual_numbers"},
        {"--json", "horn-fill", "--n", "2", "--i", "1", "edge_one_plus_epsilon", "edge_one_plus_epsilon"}}) {
    auto r = run(args);
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
      auto j = nlohmann::json::parse(line);
      CHECK(j.contains("record"));
      ++n;
    }
    CHECK(n > 0);
  }
}

TEST_CASE("horn-fill and compose print loadable documents") {
  auto fill = run({"horn-fill", "--n", "2", "--i", "1", "--name", "triangle_dual_numbers", "edge_one_plus_epsilon",
                   "edge_one_plus_epsilon"});
  REQUIRE(fill.code == 0);
  CHECK(fill.out == slurp(corpus_dir / "triangle_dual_numbers.ainf"));

  auto comp = run({"compose", "x_into_two_isomorphic", "two_isomorphic_collapse", "--name", "c"});
  REQUIRE(comp.code == 0);
  auto d = parse_document(comp.out, corpus_category);
  CHECK(d.kind == "functor");
  CHECK(check_functor(*d.functor, 1, 4).ok);
  CHECK(print_document(d) == comp.out);
}

TEST_CASE("golden outputs are identical across runs") {
  const std::vector<std::vector<std::string>> commands = {
      {"h0", "upper_triangular"},
      {"is-weq", "x_into_two_isomorphic"},
      {"is-fib", "two_isomorphic_collapse"},
      {"bar", "upper_triangular", "--max-length", "3"},
      {"cobar", "bar_dual_numbers", "--max-length", "3"},
      {"envelope", "dg_simplex_1", "--max-length", "4"},
      {"gamma-check", "dg_simplex_1", "--max-length", "4"},
      {"hom-complex", "id_two_isomorphic", "id_two_isomorphic", "--lo", "-1", "--hi", "1"},
      {"nerve", "triangle_dual_numbers"},
      {"compose", "two_isomorphic_collapse", "k_into_dual_numbers"},
      {"hochschild", "upper_triangular", "--max-degree", "2", "--representatives"},
      {"pi", "two_isomorphic", "--i", "0", "--cross-check"},
  };
  for (const auto& args : commands) {
    INFO(args[0] << " " << args[1]);
    auto a = run(args);
    auto b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("the installed binary honours the exit-code contract") {
  auto call = [](const std::string& args) {
    const std::string cmd = std::string(AINF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(call("validate dual_numbers") == 0);
  CHECK(call("is-weq k_into_dual_numbers") == 1);
  CHECK(call("nonsense") == 2);
  CHECK(call("validate " + (data_dir / "broken_dual_numbers.ainf").string()) == 3);
  CHECK(call("--corpus " + data_dir.string() + " validate undeclared_generator") == 3);
}
