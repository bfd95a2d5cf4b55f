#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "depsig/errors.hpp"
#include "depsig/interpret.hpp"
#include "test_helpers.hpp"

using namespace depsig;

namespace {

// Model over a known 47-column Model-2 schema with all-zero weights; tests
// plant specific values on top.
LinearModel blank_model() {
    std::array<double, kStyleCount> lo{}, hi{};
    hi.fill(1.0);
    LinearModel model;
    model.schema = FeatureSchema::assemble_parts(
        VocabularyIndex::from_tokens({"alpha", "beta", "gamma"}),
        StyleScaler::from_params(lo, hi), true, PosSoftmaxInput::Counts);
    model.weights.assign(kNumClasses * model.schema.dimension(), 0.0);
    return model;
}

std::size_t col_of(const LinearModel& model, const std::string& name) {
    for (std::size_t j = 0; j < model.dim(); ++j) {
        if (model.schema.column(j).name == name) return j;
    }
    REQUIRE(false);
    return 0;
}

} // namespace

TEST_CASE("rank_coefficients sorts by absolute weight within each class") {
    LinearModel model = blank_model();
    const std::size_t dim = model.dim();
    // class 0 row: alpha 0.5, beta -2.0, gamma 1.0
    model.weights[col_of(model, "alpha")] = 0.5;
    model.weights[col_of(model, "beta")] = -2.0;
    model.weights[col_of(model, "gamma")] = 1.0;

    const auto ranking = rank_coefficients(model);
    REQUIRE(ranking.size() == kNumClasses * dim);

    CHECK(ranking[0].cls == Label::NotDepression);
    CHECK(ranking[0].feature_name == "beta");
    CHECK(ranking[0].weight == -2.0);
    CHECK(ranking[0].abs_weight == 2.0);
    CHECK(ranking[0].rank == 1);
    CHECK(ranking[1].feature_name == "gamma");
    CHECK(ranking[1].rank == 2);
    CHECK(ranking[2].feature_name == "alpha");
    CHECK(ranking[2].rank == 3);

    SUBCASE("every class block is a permutation of all features") {
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            std::set<std::string> names;
            for (std::size_t r = 0; r < dim; ++r) {
                const auto& e = ranking[c * dim + r];
                CHECK(e.cls == static_cast<Label>(c));
                CHECK(e.rank == r + 1);
                names.insert(std::string(feature_template_name(e.tmpl)) + "/" + e.feature_name);
            }
            CHECK(names.size() == dim);
        }
    }
    SUBCASE("positive rescaling preserves the order") {
        LinearModel scaled = model;
        for (std::size_t j = 0; j < dim; ++j) scaled.weights[j] *= 3.75;
        const auto scaled_ranking = rank_coefficients(scaled);
        for (std::size_t r = 0; r < dim; ++r) {
            CHECK(scaled_ranking[r].feature_name == ranking[r].feature_name);
            CHECK(scaled_ranking[r].tmpl == ranking[r].tmpl);
        }
    }
}

TEST_CASE("zero model ranks purely by the deterministic tie-break") {
    const LinearModel model = blank_model();
    const auto ranking = rank_coefficients(model);
    // (template, name) lexicographic: the word block first, alphabetical.
    CHECK(ranking[0].feature_name == "alpha");
    CHECK(ranking[1].feature_name == "beta");
    CHECK(ranking[2].feature_name == "gamma");
    CHECK(ranking[3].tmpl == FeatureTemplate::PosDist);
    for (const auto& e : ranking) CHECK(e.abs_weight == 0.0);

    // within a template, names sort lexicographically
    std::vector<std::string> style_names;
    for (const auto& e : ranking) {
        if (e.cls == Label::NotDepression && e.tmpl == FeatureTemplate::ReadabilityStyle) {
            style_names.push_back(e.feature_name);
        }
    }
    CHECK(std::is_sorted(style_names.begin(), style_names.end()));
}

TEST_CASE("top_k_by_template keeps the global within-class rank") {
    LinearModel model = blank_model();
    // Make one word weight dominate everything, then a readability column,
    // then a second word.
    model.weights[col_of(model, "beta")] = 9.0;
    model.weights[col_of(model, "flesch_reading_ease")] = -5.0;
    model.weights[col_of(model, "alpha")] = 3.0;

    const auto ranking = rank_coefficients(model);

    SUBCASE("dominant word ranks first globally") {
        const auto words =
            top_k_by_template(ranking, FeatureTemplate::Words, Label::NotDepression, 5);
        REQUIRE(words.size() == 3);
        CHECK(words[0].feature_name == "beta");
        CHECK(words[0].rank == 1);
        CHECK(words[1].feature_name == "alpha");
        CHECK(words[1].rank == 3); // flesch sits between them in the global ranking
    }
    SUBCASE("template block smaller than k is returned whole") {
        const auto pnum =
            top_k_by_template(ranking, FeatureTemplate::PersonNumber, Label::NotDepression, 5);
        CHECK(pnum.size() == kPersonNumberCount);
        const auto more =
            top_k_by_template(ranking, FeatureTemplate::PersonNumber, Label::NotDepression, 99);
        CHECK(more.size() == kPersonNumberCount);
    }
    SUBCASE("entries are a subset of the ranking with consistent ranks") {
        const auto read = top_k_by_template(ranking, FeatureTemplate::ReadabilityStyle,
                                            Label::NotDepression, 5);
        REQUIRE(read.size() == 5);
        CHECK(read[0].feature_name == "flesch_reading_ease");
        CHECK(read[0].rank == 2);
        for (const auto& e : read) {
            const auto it = std::find_if(ranking.begin(), ranking.end(), [&](const auto& r) {
                return r.cls == e.cls && r.tmpl == e.tmpl && r.feature_name == e.feature_name;
            });
            REQUIRE(it != ranking.end());
            CHECK(it->rank == e.rank);
        }
    }
    SUBCASE("k must be positive") {
        CHECK_THROWS_AS(top_k_by_template(ranking, FeatureTemplate::Words,
                                          Label::NotDepression, 0),
                        DataError);
    }
}

TEST_CASE("emit_ranking_csv writes one row per (class, feature)") {
    const LinearModel model = blank_model();
    const auto ranking = rank_coefficients(model);
    std::ostringstream out;
    emit_ranking_csv(ranking, out);

    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "class,template,feature_name,weight,abs_weight,rank");

    std::vector<std::string> names;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        // feature_name is the third comma-separated field for these names
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        const auto third = line.find(',', second + 1);
        names.push_back(line.substr(second + 1, third - second - 1));
    }
    CHECK(rows == kNumClasses * model.dim()); // 3 * 47 rows for Model 2
    // reloading reproduces the ranking order
    for (std::size_t i = 0; i < names.size(); ++i) {
        CHECK(names[i] == ranking[i].feature_name);
    }
}

TEST_CASE("bootstrap_importance aggregates weights over stratified reruns") {
    const auto& lex = testutil::lexicon();
    const auto corpus = testutil::make_toy_corpus(8, 99);

    TrainConfig train_config;
    train_config.max_iter = 120;

    BootstrapConfig fast;
    fast.n_runs = 3;
    fast.subsample_fraction = 0.75;
    fast.seed = 42;

    SUBCASE("same seed gives an identical report") {
        const auto a = bootstrap_importance(corpus, true, train_config, fast, lex);
        const auto b = bootstrap_importance(corpus, true, train_config, fast, lex);
        REQUIRE(a.stats.size() == b.stats.size());
        for (std::size_t i = 0; i < a.stats.size(); ++i) {
            CHECK(a.stats[i].feature_name == b.stats[i].feature_name);
            CHECK(a.stats[i].mean == b.stats[i].mean);
            CHECK(a.stats[i].stddev == b.stats[i].stddev);
            CHECK(a.stats[i].sign_consistency == b.stats[i].sign_consistency);
        }
    }
    SUBCASE("full-fraction subsamples have zero variance") {
        BootstrapConfig full = fast;
        full.subsample_fraction = 1.0;
        const auto report = bootstrap_importance(corpus, true, train_config, full, lex);
        for (const auto& stat : report.stats) {
            CHECK(stat.stddev == 0.0);
            CHECK(stat.sign_consistency == 1.0);
        }
    }
    SUBCASE("a perfectly predictive keyword has consistent sign") {
        const auto report = bootstrap_importance(corpus, true, train_config, fast, lex);
        // "hopeless" appears only in Severe-class documents
        bool found = false;
        for (const auto& stat : report.stats) {
            if (stat.cls == Label::Severe && stat.tmpl == FeatureTemplate::Words &&
                stat.feature_name == "hopeless") {
                found = true;
                CHECK(stat.mean > 0.0);
                CHECK(stat.sign_consistency == 1.0);
            }
        }
        CHECK(found);
    }
    SUBCASE("precondition violations") {
        BootstrapConfig bad = fast;
        bad.n_runs = 1;
        CHECK_THROWS_AS(bootstrap_importance(corpus, true, train_config, bad, lex), DataError);
        bad = fast;
        bad.subsample_fraction = 0.0;
        CHECK_THROWS_AS(bootstrap_importance(corpus, true, train_config, bad, lex), DataError);
    }
}

TEST_CASE("emit_bootstrap_csv includes the stability columns") {
    const auto& lex = testutil::lexicon();
    const auto corpus = testutil::make_toy_corpus(5, 7);
    TrainConfig train_config;
    train_config.max_iter = 60;
    BootstrapConfig config;
    config.n_runs = 2;
    config.subsample_fraction = 1.0;
    config.seed = 1;
    const auto report = bootstrap_importance(corpus, false, train_config, config, lex);

    std::ostringstream out;
    emit_bootstrap_csv(report, out);
    std::istringstream in(out.str());
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "class,template,feature_name,mean,std,sign_consistency");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == report.stats.size());
}
