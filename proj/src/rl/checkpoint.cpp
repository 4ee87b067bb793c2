#include "beliefnav/rl/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "beliefnav/common/hash.hpp"

namespace beliefnav::rl {

namespace {

constexpr char kMagic[8] = {'B', 'N', 'A', 'V', 'Q', 'N', 'E', 'T'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw CheckpointError("checkpoint: truncated file");
  return value;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const QNetwork& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("checkpoint: cannot open for write: " + path.string());

  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::uint32_t>(net.in_channels()));
  write_pod(out, static_cast<std::uint32_t>(net.hidden().size()));
  for (const auto& spec : net.hidden()) {
    write_pod(out, static_cast<std::uint32_t>(spec.out_channels));
    write_pod(out, static_cast<std::uint32_t>(spec.dilation));
  }
  const auto params = net.params();
  write_pod(out, static_cast<std::uint64_t>(params.size()));
  const auto bytes = std::as_bytes(params);
  write_pod(out, fnv1a64(bytes));
  out.write(reinterpret_cast<const char*>(params.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError("checkpoint: write failed: " + path.string());
}

QNetwork load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("checkpoint: cannot open: " + path.string());

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw CheckpointError("checkpoint: bad magic: " + path.string());
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kVersion)
    throw CheckpointError("checkpoint: unsupported version " + std::to_string(version));

  const auto in_channels = read_pod<std::uint32_t>(in);
  const auto n_hidden = read_pod<std::uint32_t>(in);
  std::vector<ConvSpec> hidden;
  for (std::uint32_t i = 0; i < n_hidden; ++i) {
    ConvSpec spec;
    spec.out_channels = static_cast<int>(read_pod<std::uint32_t>(in));
    spec.dilation = static_cast<int>(read_pod<std::uint32_t>(in));
    hidden.push_back(spec);
  }

  QNetwork net(static_cast<int>(in_channels), std::move(hidden), 0);
  const auto count = read_pod<std::uint64_t>(in);
  if (count != net.param_count())
    throw CheckpointError("checkpoint: parameter count mismatch");
  const auto checksum = read_pod<std::uint64_t>(in);

  auto params = net.params();
  in.read(reinterpret_cast<char*>(params.data()),
          static_cast<std::streamsize>(params.size() * sizeof(double)));
  if (!in) throw CheckpointError("checkpoint: truncated parameters");
  if (fnv1a64(std::as_bytes(params)) != checksum)
    throw CheckpointError("checkpoint: checksum mismatch (corrupt file)");
  return net;
}

}  // namespace beliefnav::rl
