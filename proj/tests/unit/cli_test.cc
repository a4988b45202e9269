// Copyright 2026 The pnmt Authors.
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


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun Cli(const std::string& args, const std::string& stdin_text = "") {
  const std::string dir = testing::TempDir();
  const std::string in_path = dir + "/cli_stdin.txt";
  std::ofstream(in_path, std::ios::binary) << stdin_text;
  const std::string cmd = std::string("'") + PNMT_CLI_PATH + "' " + args + " < '" + in_path +
                          "' 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string WriteTemp(const std::string& name, const std::string& text) {
  const std::string path = testing::TempDir() + "/" + name;
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliTest, EncodeStdin) {
  const CliRun r = Cli("encode --codec soundex", "body\n");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "B300\n");
}

TEST(CliTest, BleuSameFile) {
  const std::string f = WriteTemp("bleu.txt", "the cat sat on the mat\nhello there my friend\n");
  const CliRun r = Cli("eval bleu --hyp " + f + " --ref " + f);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("BLEU = 100.00", 0), 0u) << r.out;
}

TEST(CliTest, GammaHandExample) {
  const std::string p = WriteTemp("p.tsv", "a 0 0\nb 2 0\nc 0 2\nd 2 2\n");
  const std::string g = WriteTemp("g.tsv", "a\tg1\nb\tg1\nc\tg2\nd\tg2\n");
  const CliRun r = Cli("geometry gamma --groups " + g + " --points " + p);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "0.5\n");
  const CliRun j = Cli("--format json geometry gamma --groups " + g + " --points " + p);
  EXPECT_NE(j.out.find("\"schema\": \"pnmt.gamma.v1\""), std::string::npos);
  const CliRun c = Cli("geometry gamma --format csv --groups " + g + " --points " + p);
  EXPECT_EQ(c.out.rfind("gamma,numerator", 0), 0u);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(Cli("frobnicate").exit_code, 1);
  EXPECT_EQ(Cli("").exit_code, 1);
  EXPECT_EQ(Cli("encode --bogus").exit_code, 1);
  EXPECT_EQ(Cli("augment perturb --k 1", "a b\n").exit_code, 1);
  EXPECT_EQ(Cli("eval bleu --hyp /nonexistent/x --ref /nonexistent/y").exit_code, 2);
  for (const char* help : {"--help", "encode --help", "bpe --help", "bpe learn --help",
                           "pipeline run --help", "geometry density --help",
                           "augment noise --help", "eval vocab --help", "cluster --help"}) {
    const CliRun r = Cli(help);
    EXPECT_EQ(r.exit_code, 0) << help;
    EXPECT_NE(r.out.find("--"), std::string::npos) << help;
  }
}

TEST(CliTest, SeedReproducibility) {
  const std::string f = WriteTemp("perturb.txt", "a b c d e\nf g h i j\nk l m n o\n");
  const CliRun a = Cli("--seed 7 augment perturb --k 3 --input " + f);
  const CliRun b = Cli("augment perturb --k 3 --seed 7 --input " + f);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Cli("--seed auto augment perturb --k 0 --input " + f).out, Slurp(f));
}

TEST(CliTest, ConfigFile) {
  const std::string cfg = WriteTemp("enc.cfg", "# flat config\ncodec = metaphone\n");
  EXPECT_EQ(Cli("encode --config " + cfg, "knight\n").out, "NT\n");
  EXPECT_EQ(Cli("encode --config " + cfg + " --codec soundex", "knight\n").out, "K523\n");
  const std::string bad = WriteTemp("bad.cfg", "no-such-flag = 1\n");
  EXPECT_EQ(Cli("encode --config " + bad, "x\n").exit_code, 1);
}

TEST(CliTest, BpeLearnApplyDecode) {
  const std::string f = WriteTemp("bpe.txt", "low lower lowest\nnewer newest\n");
  const std::string m = testing::TempDir() + "/bpe.codes";
  ASSERT_EQ(Cli("bpe learn --operations 10 --input " + f + " --output " + m).exit_code, 0);
  const CliRun applied = Cli("bpe apply --model " + m + " --input " + f);
  EXPECT_NE(applied.out.find("@@"), std::string::npos);
  const std::string seg = WriteTemp("seg.txt", applied.out);
  EXPECT_EQ(Cli("bpe decode --input " + seg).out, Slurp(f));
}

TEST(CliTest, PipelineRerunIsIdentical) {
  const std::string f = WriteTemp("pipe.txt", "the body of the car\nbut the bad speech\n");
  const std::string dir = testing::TempDir();
  const CliRun a = Cli("pipeline run --train " + f + " --output-dir " + dir + "/pa --word-bpe-ops 5");
  const CliRun b = Cli("pipeline run --from-manifest " + dir + "/pa/manifest.json --output-dir " + dir + "/pb");
  ASSERT_EQ(a.exit_code, 0);
  ASSERT_EQ(b.exit_code, 0);
  EXPECT_EQ(a.out.substr(a.out.find("digest=")), b.out.substr(b.out.find("digest=")));
  EXPECT_EQ(Cli("pipeline run --train " + f + " --encoder random-cluster --output-dir " + dir + "/pc")
                .exit_code,
            1);
}

}  // namespace
