#include "mesgencov/matio.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace mesgencov {

namespace {

constexpr std::uint32_t miINT8 = 1;
constexpr std::uint32_t miINT32 = 5;
constexpr std::uint32_t miUINT32 = 6;
constexpr std::uint32_t miDOUBLE = 9;
constexpr std::uint32_t miMATRIX = 14;
constexpr std::uint32_t mxDOUBLE_CLASS = 6;

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_i32(std::vector<std::uint8_t>& b, std::int32_t v) {
  put_u32(b, static_cast<std::uint32_t>(v));
}

void pad8(std::vector<std::uint8_t>& b) {
  while (b.size() % 8 != 0) b.push_back(0);
}

}  // namespace

void write_mat(const Eigen::MatrixXd& M, const std::string& path, const std::string& var_name) {
  if (M.size() == 0) throw DataError("write_mat: empty matrix");
  if (!M.allFinite()) throw NumericError("write_mat: matrix must be finite");

  // 128-byte header: 116 bytes of text, 8 zero bytes (subsys offset),
  // version 0x0100, endian marker "MI".
  std::vector<std::uint8_t> buf;
  {
    std::string text = "MATLAB 5.0 MAT-file, created by mesgencov";
    text.resize(116, ' ');
    buf.insert(buf.end(), text.begin(), text.end());
    for (int i = 0; i < 8; ++i) buf.push_back(0);
    buf.push_back(0x00);
    buf.push_back(0x01);
    buf.push_back('I');
    buf.push_back('M');
  }

  const std::int32_t rows = static_cast<std::int32_t>(M.rows());
  const std::int32_t cols = static_cast<std::int32_t>(M.cols());

  std::vector<std::uint8_t> el;
  // Array flags subelement.
  put_u32(el, miUINT32);
  put_u32(el, 8);
  put_u32(el, mxDOUBLE_CLASS);
  put_u32(el, 0);
  // Dimensions.
  put_u32(el, miINT32);
  put_u32(el, 8);
  put_i32(el, rows);
  put_i32(el, cols);
  // Array name; small data element format when it fits in 4 bytes.
  if (var_name.size() <= 4) {
    el.push_back(miINT8 & 0xff);
    el.push_back(0);
    el.push_back(static_cast<std::uint8_t>(var_name.size()));
    el.push_back(0);
    for (char c : var_name) el.push_back(static_cast<std::uint8_t>(c));
    pad8(el);
  } else {
    put_u32(el, miINT8);
    put_u32(el, static_cast<std::uint32_t>(var_name.size()));
    for (char c : var_name) el.push_back(static_cast<std::uint8_t>(c));
    pad8(el);
  }
  // Real part, column-major.
  put_u32(el, miDOUBLE);
  put_u32(el, static_cast<std::uint32_t>(8 * rows * cols));
  for (std::int32_t c = 0; c < cols; ++c) {
    for (std::int32_t r = 0; r < rows; ++r) {
      const double v = M(r, c);
      std::uint64_t bits;
      std::memcpy(&bits, &v, 8);
      for (int i = 0; i < 8; ++i) el.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
    }
  }

  put_u32(buf, miMATRIX);
  put_u32(buf, static_cast<std::uint32_t>(el.size()));
  buf.insert(buf.end(), el.begin(), el.end());

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("write_mat: cannot write " + path);
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw DataError("write_mat: I/O error writing " + path);
}

namespace {

struct Cursor {
  const std::vector<std::uint8_t>& b;
  size_t pos = 0;

  std::uint32_t u32() {
    if (pos + 4 > b.size()) throw ParseError("read_mat: truncated file");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  double f64() {
    if (pos + 8 > b.size()) throw ParseError("read_mat: truncated file");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[pos + i]) << (8 * i);
    pos += 8;
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  void align8() { pos = (pos + 7) & ~size_t{7}; }
};

}  // namespace

MatArray read_mat(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("read_mat: cannot open " + path);
  std::vector<std::uint8_t> b((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
  if (b.size() < 128 + 8) throw ParseError("read_mat: file too small");
  if (b[126] != 'I' || b[127] != 'M')
    throw ParseError("read_mat: not a little-endian v5 MAT-file");

  Cursor c{b, 128};
  const std::uint32_t type = c.u32();
  const std::uint32_t nbytes = c.u32();
  if (type != miMATRIX) throw ParseError("read_mat: expected miMATRIX element");
  const size_t element_end = c.pos + nbytes;

  MatArray out;
  std::int32_t rows = 0, cols = 0;
  bool have_data = false;
  while (c.pos < element_end) {
    std::uint32_t tag = c.u32();
    std::uint32_t sub_type, sub_len;
    size_t data_start;
    bool small = (tag & 0xffff0000u) != 0;
    if (small) {
      sub_type = tag & 0xffff;
      sub_len = tag >> 16;
      data_start = c.pos;
      c.pos += 4;  // small element payload occupies the next 4 bytes
    } else {
      sub_type = tag;
      sub_len = c.u32();
      data_start = c.pos;
      c.pos += sub_len;
      c.align8();
    }
    Cursor d{b, data_start};
    switch (sub_type) {
      case miUINT32: {
        const std::uint32_t flags = d.u32();
        if ((flags & 0xff) != mxDOUBLE_CLASS)
          throw ParseError("read_mat: only double arrays are supported");
        break;
      }
      case miINT32:
        rows = static_cast<std::int32_t>(d.u32());
        cols = static_cast<std::int32_t>(d.u32());
        break;
      case miINT8:
        out.name.assign(reinterpret_cast<const char*>(b.data()) + data_start, sub_len);
        break;
      case miDOUBLE: {
        if (rows <= 0 || cols <= 0) throw ParseError("read_mat: dimensions missing");
        if (sub_len != static_cast<std::uint32_t>(8 * rows * cols))
          throw ParseError("read_mat: data size mismatch");
        out.values.resize(rows, cols);
        for (std::int32_t j = 0; j < cols; ++j)
          for (std::int32_t i = 0; i < rows; ++i) out.values(i, j) = d.f64();
        have_data = true;
        break;
      }
      default:
        throw ParseError("read_mat: unsupported subelement type " + std::to_string(sub_type));
    }
    if (small) c.align8();
  }
  if (!have_data) throw ParseError("read_mat: no numeric data found");
  return out;
}

}  // namespace mesgencov
