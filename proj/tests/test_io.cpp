#include "sparsegraph/io.hpp"

#include <doctest.h>

#include "sparsegraph/branching.hpp"
#include "sparsegraph/kernel.hpp"
#include "sparsegraph/local.hpp"
#include "sparsegraph/unimodular.hpp"

namespace {

sg::Rat frac(long a, long b) { return sg::Rat(a) / sg::Rat(b); }

}  // namespace

TEST_CASE("kernel json round trips exactly") {
  const sg::FiniteKernel k = sg::make_kernel(
      {frac(1, 2), frac(1, 4), frac(1, 4)},
      {{sg::Rat(2), frac(7, 3), sg::Rat(1)},
       {frac(7, 3), sg::Rat(0), sg::Rat(5)},
       {sg::Rat(1), sg::Rat(5), frac(1, 9)}},
      true, {"a", "b", "c"});
  const sg::FiniteKernel back = sg::kernel_from_json(sg::kernel_to_json(k));
  CHECK(back.mu == k.mu);
  CHECK(back.kappa == k.kappa);
  CHECK(back.names == k.names);
  CHECK(back.exact);

  const sg::FiniteKernel plain = sg::kernel_from_json(
      R"({"mu": ["1"], "kappa": [[2]]})");
  CHECK(plain.kappa[0][0] == sg::Rat(2));
  CHECK(plain.exact);

  const sg::FiniteKernel inexact = sg::kernel_from_json(
      R"({"mu": [1.0], "kappa": [[2.5]]})");
  CHECK_FALSE(inexact.exact);
  CHECK(inexact.kappa[0][0] == frac(5, 2));

  CHECK_THROWS_AS(sg::kernel_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(sg::kernel_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(sg::kernel_from_json(R"({"mu": [true], "kappa": [[1]]})"),
                  std::invalid_argument);
}

TEST_CASE("law serializations carry the documented fields") {
  const sg::TreeLaw law = sg::exact_tree_law(sg::constant_kernel(sg::Rat(2)),
                                             {sg::Rat(1)}, 1, 6);
  const std::string tree_json = sg::tree_law_to_json(law);
  CHECK(tree_json.find("\"t\": 1") != std::string::npos);
  CHECK(tree_json.find("\"tree\"") != std::string::npos);
  CHECK(tree_json.find("\"truncated\"") != std::string::npos);

  const sg::QtSpec spec = sg::make_qt_spec({{0, 1, 1}, {2, 0, 1}, {1, 3, 0}});
  const sg::FiniteSupportLaw mixed =
      sg::qt_law(spec, {frac(9, 20), frac(7, 20), frac(4, 20)});
  const std::string law_json = sg::support_law_to_json(mixed);
  CHECK(law_json.find("\"qt_matrix\"") != std::string::npos);
  CHECK(law_json.find("\"root_type\"") != std::string::npos);
  CHECK(law_json.find("\"9/20\"") != std::string::npos);

  const sg::Graph path3 = sg::make_graph(3, {{0, 1}, {1, 2}});
  const std::string finite_json =
      sg::support_law_to_json(sg::law_from_unrooted_tree(path3));
  CHECK(finite_json.find("\"tree\"") != std::string::npos);
  CHECK(finite_json.find("\"2/3\"") != std::string::npos);

  const std::string ploc_json =
      sg::neighbourhood_law_to_json(sg::neighbourhood_law(path3, 1));
  CHECK(ploc_json.find("\"ball\"") != std::string::npos);
  CHECK(ploc_json.find("\"count\"") != std::string::npos);
  CHECK(ploc_json.find("\"n\": 3") != std::string::npos);
}
