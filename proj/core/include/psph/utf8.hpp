#pragma once

#include <string>
#include <string_view>

namespace psph {

using Text = std::u32string;
using TextView = std::u32string_view;

/// Decodes UTF-8 into Unicode scalar values. Throws FormatError on malformed input
/// (overlong forms, surrogates and truncated sequences included).
Text decode_utf8(std::string_view bytes);

std::string encode_utf8(TextView text);
std::string encode_utf8(char32_t ch);

}  // namespace psph
