#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir = fs::temp_directory_path() / ("slrc_cli_" + std::to_string(::getpid()));
  Sandbox() {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }

  std::string file(const std::string& name, const std::string& body) const {
    std::ofstream(dir / name) << body;
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int cli(const std::string& args, const std::string& stdout_file = "/dev/null") {
  const int status = std::system(("\"" DSS_CLI_PATH "\" " + args + " >" + stdout_file + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

const char* kLrc14 = R"({"scheme":"lrc","n":14,"r":4,"delta":2,"alpha":1,"file_size":9,"q":5})";
const char* kSecure = R"({"scheme":"secure_msr","k":3,"p":2,"q":7,"l1":1,"l2":1})";

}  // namespace

TEST_CASE("exit codes and reports") {
  Sandbox box;
  const std::string lrc14 = box.file("lrc14.json", kLrc14);
  const std::string secure = box.file("secure.json", kSecure);

  CHECK(cli("params --config " + lrc14, box.path("params.json")) == 0);
  CHECK(read_json(box.path("params.json"))["dmin_bound"] == 4);

  CHECK(cli("params --config " + box.file("bad.json", R"({"scheme":"lrc","n":11,"r":4,"delta":2,"file_size":3,"q":5})")) == 2);
  CHECK(cli("params --config " + box.file("typo.json", R"({"nn":3})")) == 2);
  CHECK(cli("params --config " + box.path("missing.json")) == 2);
  CHECK(cli("params") == 2);

  CHECK(cli("verify --config " + lrc14 + " --format csv", box.path("verify.csv")) == 0);
  CHECK(cli("verify --config " + lrc14 + " --max-enum 5") == 2);

  CHECK(cli("attack --config " + secure, box.path("attack.json")) == 0);
  CHECK(read_json(box.path("attack.json"))["max_leakage"] == 0);
  CHECK(cli("attack --config " + lrc14) == 2);

  box.file("input.bin", "locally repairable");
  CHECK(cli("encode " + box.path("input.bin") + " --config " + lrc14 + " --out " + box.path("s")) == 0);
  std::string few;
  for (int v = 0; v < 10; ++v) few += " " + box.path("s") + "/node_00" + std::to_string(v) + ".slrc";
  // nodes 10..13 form the short group; without it the rank is too low
  CHECK(cli("decode" + few + " --config " + lrc14 + " --out " + box.path("out.bin")) == 3);
  CHECK(cli("repair 0" + few + " --config " + lrc14 + " --out " + box.path("r")) == 0);
  CHECK(fs::file_size(box.path("r") + "/node_000.slrc") == fs::file_size(box.path("s") + "/node_000.slrc"));

  const std::string leak = box.file("leak.json", R"([{"op":"eavesdrop","e1":[4],"e2":[0]},
    {"op":"fail","node":0},{"op":"repair","node":0,"mode":"naive"}])");
  const std::string quiet = box.file("quiet.json", R"([{"op":"eavesdrop","e1":[4],"e2":[0]},
    {"op":"fail","node":0},{"op":"repair","node":0,"mode":"efficient"}])");
  CHECK(cli("simulate " + leak + " --config " + secure) == 4);
  CHECK(cli("simulate " + quiet + " --config " + secure) == 0);
  const std::string lost = box.file("lost.json", R"([{"op":"fail","node":10},{"op":"fail","node":11},
    {"op":"fail","node":12},{"op":"fail","node":13},{"op":"collect","nodes":[0,1,2,3,4,5,6,7,8,9]}])");
  CHECK(cli("simulate " + lost + " --config " + lrc14) == 3);
}
