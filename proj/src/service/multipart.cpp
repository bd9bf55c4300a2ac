#include "signbridge/service/multipart.hpp"

#include <algorithm>
#include <cctype>

namespace signbridge::service {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

// Value of `key` among the "; key=value" parameters after the first ';'.
// Quoted values may contain ';' and backslash escapes.
std::optional<std::string> header_param(std::string_view header, std::string_view key) {
  std::size_t i = header.find(';');
  while (i != std::string_view::npos && i < header.size()) {
    ++i;  // past ';'
    auto eq = header.find('=', i);
    if (eq == std::string_view::npos) return std::nullopt;
    auto name = trim(header.substr(i, eq - i));
    i = eq + 1;
    while (i < header.size() && (header[i] == ' ' || header[i] == '\t')) ++i;
    std::string value;
    if (i < header.size() && header[i] == '"') {
      for (++i; i < header.size() && header[i] != '"'; ++i) {
        if (header[i] == '\\' && i + 1 < header.size()) ++i;
        value.push_back(header[i]);
      }
      i = header.find(';', i);
    } else {
      auto end = header.find(';', i);
      value = std::string(trim(header.substr(i, end == std::string_view::npos ? end : end - i)));
      i = end;
    }
    if (iequals(name, key)) return value;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> multipart_boundary(std::string_view content_type) {
  auto semi = content_type.find(';');
  if (!iequals(trim(content_type.substr(0, semi)), "multipart/form-data")) return std::nullopt;
  auto b = header_param(content_type, "boundary");
  if (!b || b->empty() || b->size() > 70) return std::nullopt;
  return b;
}

std::vector<FormPart> parse_multipart(std::string_view body, std::string_view boundary) {
  const std::string delim = "--" + std::string(boundary);
  std::vector<FormPart> parts;

  auto pos = body.find(delim);
  if (pos == std::string_view::npos) throw MultipartError("missing opening boundary");
  pos += delim.size();
  for (;;) {
    if (body.substr(pos, 2) == "--") return parts;  // closing delimiter
    if (body.substr(pos, 2) != "\r\n") throw MultipartError("malformed boundary line");
    pos += 2;

    auto header_end = body.find("\r\n\r\n", pos);
    if (header_end == std::string_view::npos) throw MultipartError("unterminated part headers");
    FormPart part;
    bool has_disposition = false;
    std::string_view headers = body.substr(pos, header_end - pos);
    while (!headers.empty()) {
      auto eol = headers.find("\r\n");
      auto line = headers.substr(0, eol);
      headers = eol == std::string_view::npos ? std::string_view{} : headers.substr(eol + 2);
      auto colon = line.find(':');
      if (colon == std::string_view::npos) throw MultipartError("malformed part header");
      auto name = trim(line.substr(0, colon));
      auto value = trim(line.substr(colon + 1));
      if (iequals(name, "Content-Disposition")) {
        if (!iequals(trim(value.substr(0, value.find(';'))), "form-data")) {
          throw MultipartError("part is not form-data");
        }
        auto field = header_param(value, "name");
        if (!field) throw MultipartError("part without a field name");
        part.name = *field;
        part.filename = header_param(value, "filename");
        has_disposition = true;
      } else if (iequals(name, "Content-Type")) {
        part.content_type = std::string(value);
      }
    }
    if (!has_disposition) throw MultipartError("part without Content-Disposition");

    const auto data_start = header_end + 4;
    const std::string next = "\r\n" + delim;
    auto data_end = body.find(next, data_start);
    if (data_end == std::string_view::npos) throw MultipartError("unterminated part");
    part.data = body.substr(data_start, data_end - data_start);
    parts.push_back(std::move(part));
    pos = data_end + next.size();
  }
}

const FormPart* find_part(const std::vector<FormPart>& parts, std::string_view name) {
  for (const auto& p : parts) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace signbridge::service
