// Copyright 2026 The cyclip Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "cyclip/io.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclip {
namespace {

namespace fs = std::filesystem;

constexpr const char* kSmallConfig =
    "num_superclasses = 2\n"
    "children_per_parent = 2\n"
    "latent_dim = 4\n"
    "image_dim = 8\n"
    "text_dim = 6\n"
    "num_templates = 2\n"
    "train_size = 64\n"
    "test_size = 32\n"
    "epochs = 2\n"
    "batch_size = 16\n"
    "warmup_steps = 2\n"
    "hidden_dim = 8\n"
    "embed_dim = 4\n"
    "probe_epochs = 2\n";

std::string ReadText(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::TempPath("cli") / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(Path("small.cfg")) << kSmallConfig;
  }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "cyclip");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli::CliMain(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  int Train(const std::string& variant, const std::string& name) {
    std::ofstream(Path(name + ".cfg")) << kSmallConfig << "variant = " << variant << "\n";
    return Run({"train", "--config", Path(name + ".cfg"), "--data", Path("data.cyds"), "--out",
                Path(name + ".cyck")});
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run({"bogus"}), 2);
  EXPECT_EQ(Run({}), 2);
  EXPECT_EQ(Run({"--help"}), 0);
  EXPECT_EQ(Run({"gen-data", "--config", Path("missing.cfg")}), 1);
  EXPECT_FALSE(err_.str().empty());
  std::ofstream(Path("bad.cfg")) << "unknown_key = 1\n";
  EXPECT_EQ(Run({"gen-data", "--config", Path("bad.cfg"), "--out", Path("x.cyds")}), 2);
  EXPECT_EQ(Run({"eval-zeroshot", "--config", Path("small.cfg"), "--checkpoint",
                 Path("absent.cyck"), "--out", Path("z.csv")}),
            1);
}

TEST_F(CliTest, GenDataIsByteIdentical) {
  ASSERT_EQ(Run({"gen-data", "--config", Path("small.cfg"), "--out", Path("a.cyds")}), 0);
  ASSERT_EQ(Run({"gen-data", "--config", Path("small.cfg"), "--out", Path("b.cyds")}), 0);
  EXPECT_EQ(ReadFileBytes(Path("a.cyds")), ReadFileBytes(Path("b.cyds")));
  ASSERT_EQ(Run({"gen-data", "--config", Path("small.cfg"), "--seed", "5", "--out",
                 Path("c.cyds")}),
            0);
  EXPECT_NE(ReadFileBytes(Path("a.cyds")), ReadFileBytes(Path("c.cyds")));
  EXPECT_EQ(ReadDataset(Path("c.cyds")).config.seed, 5u);
}

TEST_F(CliTest, TrainThenEvaluate) {
  ASSERT_EQ(Run({"gen-data", "--config", Path("small.cfg"), "--out", Path("data.cyds")}), 0);
  ASSERT_EQ(Train("clip", "clip"), 0) << err_.str();
  const auto log = Lines(ReadText(Path("clip.cyck.log.csv")));
  ASSERT_EQ(log.size(), 1u + 2u * 4u);
  EXPECT_EQ(log[0], "step,epoch,lr,clip_loss,in_modal_loss,cross_modal_loss,total,logit_scale");

  const std::vector<std::string> common = {"--config", Path("small.cfg"), "--data",
                                           Path("data.cyds"), "--checkpoint", Path("clip.cyck")};
  auto with = [&](std::vector<std::string> head, const std::string& out) {
    head.insert(head.end(), common.begin(), common.end());
    head.push_back("--out");
    head.push_back(Path(out));
    return head;
  };

  ASSERT_EQ(Run(with({"eval-consistency"}, "consistency.csv")), 0) << err_.str();
  const auto consistency = Lines(ReadText(Path("consistency.csv")));
  ASSERT_EQ(consistency.size(), 5u);
  EXPECT_EQ(consistency[0], "k,score");
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string k = consistency[i + 1].substr(0, consistency[i + 1].find(','));
    EXPECT_EQ(k, std::vector<std::string>({"1", "3", "5", "10"})[i]);
    const double score = std::stod(consistency[i + 1].substr(consistency[i + 1].find(',') + 1));
    EXPECT_GE(score, 0.0);
    EXPECT_LE(score, 1.0);
  }
  EXPECT_EQ(out_.str(), ReadText(Path("consistency.csv")));

  ASSERT_EQ(Run(with({"eval-zeroshot"}, "zs.csv")), 0);
  const auto zs = Lines(ReadText(Path("zs.csv")));
  ASSERT_EQ(zs.size(), 3u);  // 4 classes: k = 5 is skipped
  EXPECT_EQ(zs[0], "k,accuracy");
  EXPECT_EQ(zs[2].substr(0, 2), "3,");
  ASSERT_EQ(Run(with({"eval-geometry"}, "geo.csv")), 0);
  EXPECT_EQ(Lines(ReadText(Path("geo.csv")))[0], "alignment,uniformity,cross_modal_gap");
  ASSERT_EQ(Run(with({"eval-grained"}, "grained.csv")), 0);
  EXPECT_EQ(Lines(ReadText(Path("grained.csv")))[0], "fine_grained,coarse_grained");
  ASSERT_EQ(Run(with({"linear-probe"}, "probe.csv")), 0);
  EXPECT_EQ(Lines(ReadText(Path("probe.csv")))[0], "accuracy");
  ASSERT_EQ(Run(with({"export-embeddings"}, "emb")), 0);
  const EmbeddingFile images = ReadEmbeddings(Path("emb_image.cyem"));
  EXPECT_EQ(images.vectors.rows(), 32u);
  EXPECT_EQ(images.vectors.cols(), 4u);
  ASSERT_TRUE(images.labels.has_value());
  EXPECT_EQ(ReadEmbeddings(Path("emb_classes.cyem")).vectors.rows(), 4u);
}

TEST_F(CliTest, ReportHasOneRowPerVariantAndIsDeterministic) {
  ASSERT_EQ(Run({"gen-data", "--config", Path("small.cfg"), "--out", Path("data.cyds")}), 0);
  std::vector<std::string> args = {"report", "--config", Path("small.cfg"), "--data",
                                   Path("data.cyds"), "--checkpoints"};
  for (const char* v : {"clip", "cyclip", "i-cyclip", "c-cyclip"}) {
    ASSERT_EQ(Train(v, v), 0) << err_.str();
    args.push_back(Path(std::string(v) + ".cyck"));
  }
  args.push_back("--out");
  args.push_back(Path("report.csv"));
  ASSERT_EQ(Run(args), 0) << err_.str();
  const auto rows = Lines(ReadText(Path("report.csv")));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "variant,zs_top1,consistency_k1,alignment,uniformity");
  EXPECT_EQ(rows[1].substr(0, 5), "clip,");
  EXPECT_EQ(rows[2].substr(0, 7), "cyclip,");
  EXPECT_EQ(rows[3].substr(0, 9), "i-cyclip,");
  EXPECT_EQ(rows[4].substr(0, 9), "c-cyclip,");

  const auto first_ckpt = ReadFileBytes(Path("cyclip.cyck"));
  ASSERT_EQ(Train("cyclip", "cyclip"), 0);
  EXPECT_EQ(ReadFileBytes(Path("cyclip.cyck")), first_ckpt);
  const std::string first_report = ReadText(Path("report.csv"));
  ASSERT_EQ(Run(args), 0);
  EXPECT_EQ(ReadText(Path("report.csv")), first_report);
}

}  // namespace
}  // namespace cyclip
