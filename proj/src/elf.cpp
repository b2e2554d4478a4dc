#include "axrv/elf.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace axrv {
namespace {

constexpr uint16_t kEtExec = 2;
constexpr uint16_t kEmRiscv = 243;
constexpr uint32_t kPtLoad = 1;
constexpr size_t kEhdrSize = 52;
constexpr size_t kPhdrSize = 32;

uint16_t rd16(const std::vector<uint8_t>& b, size_t off) {
  return static_cast<uint16_t>(b[off] | (b[off + 1] << 8));
}

uint32_t rd32(const std::vector<uint8_t>& b, size_t off) {
  return static_cast<uint32_t>(b[off]) | (static_cast<uint32_t>(b[off + 1]) << 8) |
         (static_cast<uint32_t>(b[off + 2]) << 16) |
         (static_cast<uint32_t>(b[off + 3]) << 24);
}

[[noreturn]] void fail(ElfErrorKind kind, const std::string& msg) {
  throw ElfError(kind, "elf: " + msg);
}

}  // namespace

const char* to_string(ElfErrorKind kind) {
  switch (kind) {
    case ElfErrorKind::ShortFile: return "short-file";
    case ElfErrorKind::BadMagic: return "bad-magic";
    case ElfErrorKind::WrongClass: return "wrong-class";
    case ElfErrorKind::WrongEndianness: return "wrong-endianness";
    case ElfErrorKind::WrongMachine: return "wrong-machine";
    case ElfErrorKind::WrongType: return "wrong-type";
    case ElfErrorKind::Malformed: return "malformed";
    case ElfErrorKind::BadSegment: return "bad-segment";
    case ElfErrorKind::SegmentOverlap: return "segment-overlap";
    case ElfErrorKind::SegmentOutOfBounds: return "segment-out-of-bounds";
  }
  return "unknown";
}

ElfImage load_elf(const std::vector<uint8_t>& b) {
  if (b.size() < kEhdrSize)
    fail(ElfErrorKind::ShortFile, "file too short for an ELF32 header");
  if (!(b[0] == 0x7F && b[1] == 'E' && b[2] == 'L' && b[3] == 'F'))
    fail(ElfErrorKind::BadMagic, "missing ELF magic");
  if (b[4] != 1)  // EI_CLASS
    fail(ElfErrorKind::WrongClass, "not a 32-bit ELF (EI_CLASS != ELFCLASS32)");
  if (b[5] != 1)  // EI_DATA
    fail(ElfErrorKind::WrongEndianness, "not little-endian (EI_DATA != ELFDATA2LSB)");

  const uint16_t type = rd16(b, 16);
  const uint16_t machine = rd16(b, 18);
  if (machine != kEmRiscv) {
    char msg[64];
    std::snprintf(msg, sizeof msg, "unexpected machine %u (want %u)", machine,
                  kEmRiscv);
    fail(ElfErrorKind::WrongMachine, msg);
  }
  if (type != kEtExec) {
    char msg[64];
    std::snprintf(msg, sizeof msg, "unexpected object type %u (want ET_EXEC)",
                  type);
    fail(ElfErrorKind::WrongType, msg);
  }

  const uint32_t phoff = rd32(b, 28);
  const uint16_t phentsize = rd16(b, 42);
  const uint16_t phnum = rd16(b, 44);
  if (phnum > 0 && phentsize != kPhdrSize)
    fail(ElfErrorKind::Malformed, "unexpected program header entry size");
  if (static_cast<uint64_t>(phoff) + static_cast<uint64_t>(phnum) * kPhdrSize >
      b.size())
    fail(ElfErrorKind::ShortFile, "program header table extends past the file");

  ElfImage image;
  image.entry = rd32(b, 24);

  for (uint16_t i = 0; i < phnum; ++i) {
    const size_t ph = phoff + static_cast<size_t>(i) * kPhdrSize;
    if (rd32(b, ph + 0) != kPtLoad) continue;
    const uint32_t offset = rd32(b, ph + 4);
    const uint32_t vaddr = rd32(b, ph + 8);
    const uint32_t filesz = rd32(b, ph + 16);
    const uint32_t memsz = rd32(b, ph + 20);
    if (memsz == 0) continue;
    if (memsz < filesz)
      fail(ElfErrorKind::BadSegment, "segment memsz smaller than filesz");
    if (static_cast<uint64_t>(vaddr) + memsz > (1ull << 32))
      fail(ElfErrorKind::BadSegment, "segment wraps the 32-bit address space");
    if (static_cast<uint64_t>(offset) + filesz > b.size())
      fail(ElfErrorKind::ShortFile, "segment data extends past the file");

    ElfSegment seg;
    seg.vaddr = vaddr;
    seg.bytes.assign(memsz, 0);
    std::copy_n(b.begin() + offset, filesz, seg.bytes.begin());
    image.segments.push_back(std::move(seg));
  }

  std::vector<std::pair<uint64_t, uint64_t>> ranges;
  ranges.reserve(image.segments.size());
  for (const auto& seg : image.segments)
    ranges.emplace_back(seg.vaddr,
                        static_cast<uint64_t>(seg.vaddr) + seg.bytes.size());
  std::sort(ranges.begin(), ranges.end());
  for (size_t i = 1; i < ranges.size(); ++i) {
    if (ranges[i].first < ranges[i - 1].second) {
      char msg[96];
      std::snprintf(msg, sizeof msg,
                    "segments overlap near 0x%08llx",
                    static_cast<unsigned long long>(ranges[i].first));
      fail(ElfErrorKind::SegmentOverlap, msg);
    }
  }
  return image;
}

ElfImage load_elf_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return load_elf(bytes);
}

}  // namespace axrv
