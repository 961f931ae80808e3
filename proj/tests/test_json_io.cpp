#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "beurling.hpp"

using namespace beurling;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

class JsonIo : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("beurling_json_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name), std::ios::binary) << text;
    }

    fs::path dir_;
};

PointSequence sample_sequence() {
    return PointSequence(2,
                         {BallPoint(CVector{complex(0.1, 1.0 / 3.0), 0.2}),
                          BallPoint(CVector{complex(-0.7, 0.0), complex(0.0, 0.1)}),
                          BallPoint(CVector{0.0, complex(0.123456789012345678, -0.5)})},
                         "mixed");
}

} // namespace

TEST_F(JsonIo, SequenceRoundTripIsByteIdentical) {
    const auto seq = sample_sequence();
    io::save_sequence(path("a.json"), seq);
    const auto back = io::load_sequence(path("a.json"));
    ASSERT_EQ(back.size(), seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) EXPECT_EQ(back[i].vec(), seq[i].vec());
    EXPECT_EQ(back.label(), "mixed");
    io::save_sequence(path("b.json"), back);
    EXPECT_EQ(io::read_text(path("a.json")), io::read_text(path("b.json")));
}

TEST_F(JsonIo, RejectsPointsOutsideBall) {
    write("s.json", R"({"dim": 1, "points": [[[1.0, 0.0]]]})");
    EXPECT_THROW(io::load_sequence(path("s.json")), FormatError);
    write("s.json", R"({"dim": 2, "points": [[[0.6, 0.0], [0.0, 0.8]]]})");
    EXPECT_THROW(io::load_sequence(path("s.json")), FormatError);
}

TEST_F(JsonIo, RejectsMixedDimensions) {
    write("s.json", R"({"dim": 2, "points": [[[0.1, 0.0], [0.0, 0.0]], [[0.1, 0.0]]]})");
    EXPECT_THROW(io::load_sequence(path("s.json")), FormatError);
}

TEST_F(JsonIo, RejectsMalformedFiles) {
    write("s.json", R"({"dim": 1, "points": [[[0.1, 0.0]])");
    EXPECT_THROW(io::load_sequence(path("s.json")), FormatError);
    write("s.json", R"({"dim": 0, "points": []})");
    EXPECT_THROW(io::load_sequence(path("s.json")), FormatError);
    write("s.json", R"({"dim": 1, "points": [[[0.1]]]})");
    EXPECT_THROW(io::load_sequence(path("s.json")), FormatError);
    write("s.json", R"({"dim": 1})");
    EXPECT_THROW(io::load_sequence(path("s.json")), FormatError);
    write("s.json", R"([1, 2])");
    EXPECT_THROW(io::load_sequence(path("s.json")), FormatError);
    EXPECT_THROW(io::load_sequence(path("missing.json")), IoError);
}

TEST_F(JsonIo, SystemRoundTrip) {
    const auto sys = build_system(sample_sequence());
    io::write_json(path("sys.json"), io::system_to_json(sys));
    const auto back = io::load_system(path("sys.json"));
    EXPECT_EQ(back.delta(), sys.delta());
    EXPECT_EQ(back.perm(), sys.perm());
    EXPECT_EQ(back.B_diag(), sys.B_diag());
    const BallPoint x(CVector{0.2, complex(0.1, -0.3)});
    EXPECT_EQ(back.F_all(x), sys.F_all(x));
    io::write_json(path("sys2.json"), io::system_to_json(back));
    EXPECT_EQ(io::read_text(path("sys.json")), io::read_text(path("sys2.json")));
}

TEST_F(JsonIo, SystemTamperingDetected) {
    const auto sys = build_system(sample_sequence());
    const json good = io::system_to_json(sys);

    json j = good;
    j["delta"] = sys.delta() * (1 + 1e-15) + 1e-17;
    EXPECT_THROW(io::system_from_json(j), FormatError);

    j = good;
    j["perm"] = json::array({0, 0, 1});
    EXPECT_THROW(io::system_from_json(j), FormatError);

    j = good;
    j["points"][0][0][0] = 0.05;
    EXPECT_THROW(io::system_from_json(j), FormatError);

    j = good;
    j.erase("A_diag");
    EXPECT_THROW(io::system_from_json(j), FormatError);

    j = good;
    std::swap(j["points"][0], j["points"][2]);  // no longer sorted by norm
    EXPECT_THROW(io::system_from_json(j), FormatError);
}

TEST_F(JsonIo, ValuesFile) {
    const std::vector<complex> alpha = {complex(1.0, 0.0), complex(-0.5, 2.25), complex(0.0, 0.1)};
    io::write_json(path("v.json"), io::values_to_json(alpha));
    EXPECT_EQ(io::load_values(path("v.json")), alpha);
    write("v.json", R"({"alpha": [[1, 0], [2]]})");
    EXPECT_THROW(io::load_values(path("v.json")), FormatError);
    write("v.json", R"({"beta": []})");
    EXPECT_THROW(io::load_values(path("v.json")), FormatError);
}

TEST(JsonReports, CarlesonAndAuditShapes) {
    const json c = io::carleson_to_json(carleson_delta(sample_sequence()));
    for (const char* key : {"delta", "per_index_products", "satisfied", "threshold"}) EXPECT_TRUE(c.contains(key));
    EXPECT_EQ(c["per_index_products"].size(), 3u);

    const json a = io::audit_to_json(run_audit("rudin", 100, 1, 2));
    for (const char* key : {"lemma_id", "kind", "trials", "failures", "worst_margin", "tolerance", "worst_case_input"})
        EXPECT_TRUE(a.contains(key));
    EXPECT_EQ(a["lemma_id"], "rudin");
    EXPECT_EQ(a["kind"], "inequality");
}
