#include "support.hpp"

#include "secondlaw/batch.hpp"
#include "secondlaw/errors.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using namespace secondlaw;

TEST(Batch, SummariesMatchSerialBitForBit) {
    std::mt19937_64 rng(60);
    std::vector<Trajectory> trajs;
    for (int k = 0; k < 24; ++k) trajs.push_back(support::random_driven(rng, 200));
    const auto par = batch::summarize_all(trajs);
    const auto ser = batch::summarize_all_serial(trajs);
    ASSERT_EQ(par.size(), ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        EXPECT_EQ(par[i].heat, ser[i].heat);
        EXPECT_EQ(par[i].work, ser[i].work);
        EXPECT_EQ(par[i].entropy_production, ser[i].entropy_production);
        EXPECT_EQ(par[i].partition.reversible, ser[i].partition.reversible);
        EXPECT_EQ(par[i].irr_work_via_free_energy, ser[i].irr_work_via_free_energy);
    }
}

TEST(Batch, OttoMatchesSerialBitForBit) {
    std::vector<OttoConfig> configs(12);
    for (std::size_t i = 0; i < configs.size(); ++i) {
        configs[i].Th = 1.5 + 0.3 * static_cast<double>(i);
        configs[i].stroke_duration = 0.5 + 0.2 * static_cast<double>(i);
        configs[i].steps = 51;
    }
    const auto par = batch::run_otto_all(configs);
    const auto ser = batch::run_otto_all_serial(configs);
    for (std::size_t i = 0; i < par.size(); ++i) {
        EXPECT_EQ(par[i].Qh, ser[i].Qh);
        EXPECT_EQ(par[i].W_total, ser[i].W_total);
        EXPECT_EQ(par[i].dIS_h, ser[i].dIS_h);
        EXPECT_EQ(par[i].excited_population_A, ser[i].excited_population_A);
    }
}

TEST(Batch, LowestIndexErrorRethrown) {
    try {
        batch::parallel_for(16, [](std::size_t i) {
            if (i == 5) throw std::runtime_error("five");
            if (i == 11) throw std::runtime_error("eleven");
        });
        FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "five");
    }
    std::vector<OttoConfig> configs(3);
    configs[1].omega1 = 5.0;
    EXPECT_THROW(batch::run_otto_all(configs), ValidationError);
}
