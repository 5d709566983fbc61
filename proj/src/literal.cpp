// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/literal.hpp"

#include <cctype>
#include <charconv>
#include <system_error>

#include "tensorbridge/error.hpp"

namespace tb {

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    }

    bool at(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    void expect(char c) {
        if (!at(c)) {
            fail(ErrorKind::ParseError, std::string("expected '") + c +
                                            "' at offset " + std::to_string(pos));
        }
        ++pos;
    }

    double number() {
        skip_ws();
        double v = 0;
        const auto* begin = text.data() + pos;
        const auto* end = text.data() + text.size();
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc{} || res.ptr == begin) {
            fail(ErrorKind::ParseError,
                 "expected a number at offset " + std::to_string(pos));
        }
        pos = static_cast<std::size_t>(res.ptr - text.data());
        return v;
    }

    // Parses one node; appends leaves row-major and returns the node shape.
    std::vector<std::size_t> node(std::vector<double>& out) {
        if (!at('[')) {
            out.push_back(number());
            return {};
        }
        ++pos;  // consume '['
        std::vector<std::size_t> child_shape;
        std::size_t count = 0;
        if (!at(']')) {
            child_shape = node(out);
            count = 1;
            while (at(',')) {
                ++pos;
                const auto next_shape = node(out);
                if (next_shape != child_shape) {
                    fail(ErrorKind::ParseError, "ragged nesting");
                }
                ++count;
            }
        }
        expect(']');
        std::vector<std::size_t> shape{count};
        shape.insert(shape.end(), child_shape.begin(), child_shape.end());
        return shape;
    }
};

}  // namespace

ParsedLiteral parse_tensor_literal(std::string_view text) {
    Parser p{text};
    ParsedLiteral lit;
    lit.shape = Shape(p.node(lit.values));
    p.skip_ws();
    if (p.pos != text.size()) {
        fail(ErrorKind::ParseError,
             "trailing input at offset " + std::to_string(p.pos));
    }
    return lit;
}

std::string format_element(double v, DType dtype) {
    char buf[64];
    std::to_chars_result res{};
    if (dtype == DType::F32) {
        res = std::to_chars(buf, buf + sizeof(buf), static_cast<float>(v));
    } else {
        res = std::to_chars(buf, buf + sizeof(buf), v);
    }
    return std::string(buf, res.ptr);
}

namespace {

std::string format_rec(const TensorValue& v, std::size_t axis, std::size_t offset,
                       const std::vector<std::size_t>& strides) {
    if (axis == v.rank()) return format_element(v.buffer.at(offset), v.dtype());
    std::string s = "[";
    for (std::size_t i = 0; i < v.shape.dim(axis); ++i) {
        if (i > 0) s += ',';
        s += format_rec(v, axis + 1, offset + i * strides[axis], strides);
    }
    s += ']';
    return s;
}

}  // namespace

std::string format_tensor(const TensorValue& v) {
    return format_rec(v, 0, 0, row_major_strides(v.shape));
}

}  // namespace tb
