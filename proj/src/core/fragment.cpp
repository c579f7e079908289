#include "kary/fragment.hpp"

#include <algorithm>
#include <string>

#include "kary/hash.hpp"

namespace kary {
namespace {

class Reader {
 public:
  explicit Reader(ByteView data) : data_(data) {}

  std::uint8_t u8(const char* field) {
    need(1, field);
    return data_[pos_++];
  }

  std::uint32_t u32(const char* field) {
    need(4, field);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_++];
    return v;
  }

  // Length-prefixed payload: a length larger than what remains is an overrun.
  Bytes sized(std::uint32_t len, const char* field) {
    if (len > remaining()) {
      throw FragmentParseError(FragmentParseErrorKind::kLengthOverrun,
                               std::string(field) + " length exceeds available data");
    }
    return take(len);
  }

  Bytes raw(std::size_t len, const char* field) {
    need(len, field);
    return take(len);
  }

  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n, const char* field) const {
    if (remaining() < n) {
      throw FragmentParseError(FragmentParseErrorKind::kTruncated,
                               std::string("truncated fragment at ") + field);
    }
  }

  Bytes take(std::size_t n) {
    Bytes out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
              data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
  }

  ByteView data_;
  std::size_t pos_ = 0;
};

void invalid(const std::string& what) {
  throw FragmentParseError(FragmentParseErrorKind::kInvalidField, what);
}

}  // namespace

std::vector<std::uint8_t> dependency_indices(ClassCode c, unsigned index, unsigned k) {
  std::vector<std::uint8_t> deps;
  switch (c) {
    case ClassCode::kIA:
      for (unsigned j = 1; j <= k; ++j) {
        if (j != index) deps.push_back(static_cast<std::uint8_t>(j));
      }
      break;
    case ClassCode::kIC:
      if (index < k) deps.push_back(static_cast<std::uint8_t>(index + 1));
      break;
    case ClassCode::kIB:
    case ClassCode::kII:
      break;
  }
  return deps;
}

Bytes serialize_fragment(const Fragment& f) {
  if (f.dep_digests.size() > 255) throw InvalidArgument("too many dependency digests");
  Bytes out(kFragmentMagic.begin(), kFragmentMagic.end());
  out.push_back(kFragmentVersion);
  out.push_back(f.index);
  out.push_back(f.k);
  out.push_back(static_cast<std::uint8_t>(f.class_code));
  out.push_back(f.share_x);
  append_u32_be(out, static_cast<std::uint32_t>(f.share_y.size()));
  out.insert(out.end(), f.share_y.begin(), f.share_y.end());
  append_u32_be(out, static_cast<std::uint32_t>(f.slice.size()));
  out.insert(out.end(), f.slice.begin(), f.slice.end());
  out.push_back(static_cast<std::uint8_t>(f.dep_digests.size()));
  for (const auto& d : f.dep_digests) out.insert(out.end(), d.begin(), d.end());
  return out;
}

Fragment parse_fragment(ByteView data) {
  Reader in(data);
  Bytes magic = in.raw(kFragmentMagic.size(), "magic");
  if (!std::equal(magic.begin(), magic.end(), kFragmentMagic.begin())) {
    throw FragmentParseError(FragmentParseErrorKind::kBadMagic, "bad fragment magic");
  }
  if (in.u8("version") != kFragmentVersion) {
    throw FragmentParseError(FragmentParseErrorKind::kUnsupportedVersion,
                             "unsupported fragment version");
  }

  Fragment f;
  f.index = in.u8("index");
  f.k = in.u8("k");
  std::uint8_t class_byte = in.u8("class_code");
  f.share_x = in.u8("share_x");
  std::uint32_t share_len = in.u32("share_len");
  f.share_y = in.sized(share_len, "share");
  std::uint32_t slice_len = in.u32("slice_len");
  f.slice = in.sized(slice_len, "slice");
  std::uint8_t dep_count = in.u8("dep_count");
  for (unsigned i = 0; i < dep_count; ++i) {
    Bytes d = in.raw(kDigestSize, "dep_digests");
    Digest digest;
    std::copy(d.begin(), d.end(), digest.begin());
    f.dep_digests.push_back(digest);
  }
  if (in.remaining() != 0) {
    throw FragmentParseError(FragmentParseErrorKind::kTrailingData, "trailing bytes after fragment");
  }

  if (f.k == 0 || f.index == 0 || f.index > f.k) invalid("fragment index out of range");
  if (class_byte > static_cast<std::uint8_t>(ClassCode::kII)) invalid("unknown class code");
  f.class_code = static_cast<ClassCode>(class_byte);
  if (f.share_x != f.index) invalid("share abscissa must equal fragment index");
  if (f.share_y.size() != kKeySize) invalid("share ordinate must be 32 bytes");
  if (f.slice.empty()) invalid("empty slice");
  if (f.dep_digests.size() != dependency_indices(f.class_code, f.index, f.k).size()) {
    invalid("dependency count does not match class rule");
  }
  return f;
}

std::vector<Bytes> build_fragments(std::span<const Bytes> slices,
                                   std::span<const SecretShare> shares,
                                   const PayloadManifest& manifest) {
  manifest.validate();
  if (slices.size() != manifest.k || shares.size() != manifest.k) {
    throw InvalidArgument("slice and share counts must equal k");
  }
  std::vector<Digest> digests;
  digests.reserve(slices.size());
  for (const auto& s : slices) digests.push_back(sha256(s));

  std::vector<Bytes> out;
  out.reserve(manifest.k);
  for (unsigned i = 1; i <= manifest.k; ++i) {
    const SecretShare& share = shares[i - 1];
    if (share.x != i) throw InvalidArgument("share abscissa must equal fragment index");
    if (digests[i - 1] != manifest.slice_digests[i - 1]) {
      throw InvalidArgument("slice does not match manifest digest");
    }
    Fragment f;
    f.index = static_cast<std::uint8_t>(i);
    f.k = static_cast<std::uint8_t>(manifest.k);
    f.class_code = manifest.class_code;
    f.share_x = share.x;
    f.share_y = share.y;
    f.slice = slices[i - 1];
    for (std::uint8_t dep : dependency_indices(manifest.class_code, i, manifest.k)) {
      f.dep_digests.push_back(digests[dep - 1]);
    }
    out.push_back(serialize_fragment(f));
  }
  return out;
}

}  // namespace kary
