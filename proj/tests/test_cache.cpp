#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "wildcurve/cache.hpp"
#include "wildcurve/refined.hpp"

using namespace wildcurve;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("wildcurve_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

void clear_memos() {
    lr_memo().clear();
    macdonald_N_memo().clear();
    macdonald_P_memo().clear();
    htilde_memo().clear();
    principal_spec_memo().clear();
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Serialization, RoundTrip) {
    std::vector<RationalBivar> xs{
        RationalBivar(),
        RationalBivar(7),
        RationalBivar(LaurentBivar::parse("1 - 2/3*q^(1/2)*y + q^(-2)*y^3", VarPair::qy)),
        RationalBivar::inv_one_minus(VarPair::st, 2, 4) * RationalBivar::inv_one_minus(VarPair::st, 2, 4),
        macdonald_fusion({Partition{2}, Partition{1}}).at(Partition{2, 1}),
    };
    for (auto& x : xs) {
        EXPECT_EQ(deserialize_rational(serialize(x)), x) << x.str();
        EXPECT_EQ(serialize(deserialize_rational(serialize(x))), serialize(x));
    }
    EXPECT_EQ(parse_tuple_key(tuple_key({Partition{2, 1}, Partition{3}})), (std::vector<Partition>{Partition{2, 1}, Partition{3}}));
}

TEST(TableCache, WarmMatchesCold) {
    auto dir = scratch("warm");
    WildCurveData d{1, {2, 3}, {2, 2}};
    clear_memos();
    auto cold = z_pt_refined(d, 3);
    TableCache c(dir);
    EXPECT_GT(c.flush(), 0u);
    EXPECT_EQ(c.flush(), 0u);  // nothing new

    clear_memos();
    TableCache w(dir);
    ASSERT_TRUE(w.load());
    EXPECT_GT(w.loaded(), 0u);
    EXPECT_EQ(w.skipped(), 0u);
    EXPECT_EQ(macdonald_N_memo().size() + lr_memo().size() > 0, true);
    auto warm = z_pt_refined(d, 3);
    EXPECT_EQ(warm, cold);
    fs::remove_all(dir);
}

TEST(TableCache, TruncatedLastLineIsSkipped) {
    auto dir = scratch("trunc");
    clear_memos();
    principal_schur(Partition{2, 1});
    schur_conj_spec(Partition{2, 1});
    schur_conj_spec(Partition{3});
    TableCache c(dir);
    c.flush();
    std::string text = read(c.path());
    {
        std::ofstream out(c.path(), std::ios::binary | std::ios::app);
        out << "principal_spec:[4]\t2|0:";  // interrupted append
    }
    clear_memos();
    TableCache w(dir);
    ASSERT_TRUE(w.load());
    EXPECT_EQ(w.skipped(), 1u);
    EXPECT_EQ(principal_spec_memo().size(), 2u);
    EXPECT_EQ(schur_conj_spec(Partition{3}), principal_schur(Partition{1, 1, 1}));

    // a later flush drops the broken tail before appending
    schur_conj_spec(Partition{4});
    EXPECT_EQ(w.flush(), 1u);
    EXPECT_EQ(read(c.path()).substr(0, text.size()), text);
    clear_memos();
    TableCache again(dir);
    ASSERT_TRUE(again.load());
    EXPECT_EQ(principal_spec_memo().size(), 3u);
    EXPECT_EQ(again.skipped(), 0u);
    EXPECT_EQ(schur_conj_spec(Partition{4}), principal_schur(Partition{1, 1, 1, 1}));
    fs::remove_all(dir);
}

TEST(TableCache, OtherVersionIsIgnored) {
    auto dir = scratch("version");
    fs::create_directories(dir);
    {
        std::ofstream out(dir / TableCache::file_name);
        out << "wildcurve-cache\t0\nprincipal_spec:[1]\tgarbage\n";
    }
    clear_memos();
    TableCache c(dir);
    EXPECT_FALSE(c.load());
    EXPECT_EQ(principal_spec_memo().size(), 0u);
    // flushing rewrites the file under the current header
    schur_conj_spec(Partition{2});
    EXPECT_EQ(c.flush(), 1u);
    EXPECT_EQ(read(c.path()).rfind(std::string(TableCache::header) + "\n", 0), 0u);
    fs::remove_all(dir);
}

TEST(TableCache, MissingDirectory) {
    TableCache c(scratch("missing"));
    EXPECT_FALSE(c.load());
    EXPECT_EQ(c.loaded(), 0u);
}
