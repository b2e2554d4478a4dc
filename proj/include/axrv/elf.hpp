#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace axrv {

enum class ElfErrorKind : uint8_t {
  ShortFile,           // file too small for the structures it declares
  BadMagic,            // \x7fELF signature missing
  WrongClass,          // not ELFCLASS32
  WrongEndianness,     // not little-endian
  WrongMachine,        // not EM_RISCV
  WrongType,           // not ET_EXEC
  Malformed,           // inconsistent header fields (e.g. phentsize)
  BadSegment,          // memsz < filesz, or segment wraps the address space
  SegmentOverlap,      // two PT_LOAD ranges intersect
  SegmentOutOfBounds,  // segment does not fit in the target memory
};

const char* to_string(ElfErrorKind kind);

class ElfError : public std::runtime_error {
 public:
  ElfError(ElfErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ElfErrorKind kind() const { return kind_; }

 private:
  ElfErrorKind kind_;
};

struct ElfSegment {
  uint32_t vaddr = 0;
  // memsz bytes: the filesz prefix comes from the file, the rest is zeroed.
  std::vector<uint8_t> bytes;
};

struct ElfImage {
  uint32_t entry = 0;
  std::vector<ElfSegment> segments;
};

// Parses and validates a 32-bit little-endian RISC-V executable,
// returning its PT_LOAD segments and entry point.  Throws ElfError with a
// distinct kind per failure mode.
ElfImage load_elf(const std::vector<uint8_t>& bytes);

// Reads the file and parses it; throws std::runtime_error when the file
// cannot be read, ElfError for content problems.
ElfImage load_elf_file(const std::string& path);

}  // namespace axrv
