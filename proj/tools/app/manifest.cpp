#include "manifest.hpp"

#include "semdisc/error.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>

namespace semdisc::app {

namespace {

struct Digest
{
   std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};

   Digest()
   {
      if(!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
         throw std::runtime_error("sha256: digest init failed");
   }

   void update(const char* data, std::size_t n) { EVP_DigestUpdate(ctx.get(), data, n); }

   std::string hex()
   {
      std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
      unsigned int len = 0;
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
      std::string out;
      char buf[3];
      for(unsigned i = 0; i < len; ++i) {
         std::snprintf(buf, sizeof buf, "%02x", md[i]);
         out += buf;
      }
      return out;
   }
};

} // namespace

std::string sha256_hex(std::string_view bytes)
{
   Digest d;
   d.update(bytes.data(), bytes.size());
   return d.hex();
}

std::string sha256_file(const std::filesystem::path& file)
{
   std::ifstream in(file, std::ios::binary);
   if(!in) fail(ErrorKind::io, "cannot read " + file.string());
   Digest d;
   std::array<char, 1 << 16> buf;
   while(in) {
      in.read(buf.data(), buf.size());
      d.update(buf.data(), static_cast<std::size_t>(in.gcount()));
   }
   return d.hex();
}

std::string rfc3339_now()
{
   const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
   std::tm tm{};
   gmtime_r(&now, &tm);
   char buf[32];
   std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
   return buf;
}

json run_manifest(const std::vector<std::string>& argv,
                  const std::string& dataset_id,
                  const std::vector<std::filesystem::path>& inputs,
                  std::optional<std::uint64_t> seed,
                  const std::vector<std::string>& outputs)
{
   json files = json::array();
   for(const auto& f : inputs)
      files.push_back({{"name", f.filename().string()}, {"sha256", sha256_file(f)}});
   return {{"tool", "semdisc"},
           {"version", kToolVersion},
           {"command", argv.size() > 1 ? argv[1] : ""},
           {"argv", argv},
           {"dataset", {{"id", dataset_id}, {"files", std::move(files)}}},
           {"seed", seed ? json(*seed) : json(nullptr)},
           {"outputs", outputs},
           {"timestamp", rfc3339_now()}};
}

} // namespace semdisc::app
