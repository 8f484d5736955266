#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "mt/corpus.hpp"
#include "mt/io.hpp"
#include "support.hpp"

using namespace mt;

namespace {

std::vector<Example> random_examples(std::mt19937_64& rng, const HypothesisClass& c, std::size_t k) {
    std::uniform_int_distribution<std::size_t> x(0, c.num_instances() - 1);
    std::vector<Example> z;
    for (std::size_t i = 0; i < k; ++i) z.push_back({x(rng), static_cast<bool>(rng() & 1)});
    return z;
}

}  // namespace

TEST_CASE("consistency on the Warmuth and appendix rows") {
    const auto w = warmuth_class();
    CHECK(consistent(0, {0, true}, w));
    CHECK_FALSE(consistent(0, {0, false}, w));
    const auto a = appendix_class();
    CHECK(consistent(5, {5, true}, a));
    CHECK_THROWS_AS(consistent(0, {9, true}, w), input_error);
    CHECK_THROWS_AS(consistent(10, {0, true}, w), input_error);
}

TEST_CASE("version spaces") {
    const auto w = warmuth_class();
    CHECK(version_space({}, w).size() == 10);
    CHECK(version_space({{0, true}}, w) == w.subset({0, 4, 5, 7, 9}));
    const auto a = appendix_class();
    CHECK(version_space({{3, true}, {4, true}}, a) == a.subset({5}));
    CHECK(version_space({{0, true}, {0, false}}, w).empty());
    CHECK(version_space({{0, true}}, w).key() == "0,4,5,7,9");
}

TEST_CASE("pattern restriction") {
    const auto w = warmuth_class();
    CHECK(restrict_patterns(w.all(), w.all_instances(), w).size() == 10);
    CHECK(restrict_patterns(w.subset({0, 1}), {1}, w).size() == 1);
    CHECK(restrict_patterns(w.all(), {0, 1}, w).size() == 4);
    CHECK_THROWS_AS(restrict_patterns(w.all(), {}, w), input_error);
}

TEST_CASE("hamming distances") {
    const auto w = warmuth_class();
    CHECK(hamming(0, 0, w) == 0);
    CHECK(hamming(0, 5, w) == 1);
    CHECK(hamming(0, 2, w) == 4);
}

TEST_CASE("class validation") {
    CHECK_THROWS_AS(HypothesisClass::from_strings({"01", "01"}), input_error);
    CHECK_THROWS_AS(HypothesisClass::from_strings({"01", "1"}), input_error);
    CHECK_THROWS_AS(HypothesisClass::from_strings({}), input_error);
    const auto c = HypothesisClass::from_strings({"01", "10"});
    CHECK(c.hypothesis_name(1) == "h2");
    CHECK(c.instance_name(0) == "x1");
    CHECK(c.hypothesis_index("h2") == 1);
    CHECK_THROWS_AS(c.hypothesis_index("h9"), input_error);
}

TEST_CASE("version spaces of different classes do not mix") {
    const auto a = HypothesisClass::from_strings({"01", "10"});
    const auto b = HypothesisClass::from_strings({"00", "11"});
    CHECK(a.id() != b.id());
    CHECK_THROWS_AS(a.all() & b.all(), input_error);
    CHECK_THROWS_AS(refine(b.all(), {0, true}, a), input_error);
}

TEST_CASE("version space algebra properties on random classes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = oracle::random_class(rng, 1, 10, 1, 6);
        const auto z1 = random_examples(rng, c, 3), z2 = random_examples(rng, c, 2);
        auto both = z1;
        both.insert(both.end(), z2.begin(), z2.end());
        CHECK(version_space(both, c) == (version_space(z1, c) & version_space(z2, c)));
        CHECK(version_space(both, c).subset_of(version_space(z1, c)));
        CHECK(restrict_patterns(c.all(), c.all_instances(), c).size() == c.num_hypotheses());
        for (Index a = 0; a < c.num_hypotheses(); ++a)
            for (Index b = 0; b < c.num_hypotheses(); ++b) {
                CHECK(hamming(a, b, c) == hamming(b, a, c));
                CHECK((hamming(a, b, c) == 0) == (a == b));
                for (Index m = 0; m < c.num_hypotheses(); ++m)
                    CHECK(hamming(a, b, c) <= hamming(a, m, c) + hamming(m, b, c));
            }
    }
}

TEST_CASE("CSV and JSON class formats") {
    const auto w = warmuth_class();
    std::ostringstream out;
    write_class_csv(out, w);
    std::istringstream in(out.str());
    const auto back = read_class_csv(in);
    CHECK(back.num_hypotheses() == 10);
    for (Index h = 0; h < 10; ++h) CHECK(back.row_string(h) == w.row_string(h));
    CHECK(class_to_json(class_from_json(class_to_json(w))) == class_to_json(w));

    std::istringstream labelled("name,x1,x2\na,0,1\nb,1,1\n");
    CHECK(read_class_csv(labelled).hypothesis_name(1) == "b");
    std::istringstream ragged("x1,x2\na,0,1\nb,1\n");
    CHECK_THROWS_AS(read_class_csv(ragged), input_error);
    std::istringstream dup("x1,x2\na,0,1\nb,0,1\n");
    CHECK_THROWS_AS(read_class_csv(dup), input_error);
    std::istringstream bad("x1,x2\na,0,2\n");
    CHECK_THROWS_AS(read_class_csv(bad), input_error);
    CHECK_THROWS_AS(class_from_json(json::parse(R"({"hypotheses":[{"labels":[0,1]},{"labels":[1]}]})")),
                    input_error);
    CHECK_THROWS_AS(class_from_json(json::parse(R"({"hypotheses":[{"labels":[0,1]},{"labels":[0,1]}]})")),
                    input_error);
}
