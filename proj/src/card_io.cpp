// Copyright 2026 The ctxsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctxsim/card_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "ctxsim/error.hpp"

namespace ctxsim::usim
{

namespace
{

constexpr std::string_view kMagic = "usim-card-image 1";

struct Line
{
    std::size_t number;
    std::size_t offset;
    std::string_view text;
};

class Parser
{
  public:
    explicit Parser(std::string_view text)
    {
        std::size_t pos = 0, number = 1;
        while (pos < text.size())
        {
            auto nl = text.find('\n', pos);
            auto end = nl == std::string_view::npos ? text.size() : nl;
            m_lines.push_back({number++, pos, text.substr(pos, end - pos)});
            pos = end + 1;
        }
        m_endOffset = text.size();
    }

    [[noreturn]] void error(const Line &line, const std::string &what) const
    {
        fail(Errc::ParseError,
             "line " + std::to_string(line.number) + ", offset " + std::to_string(line.offset) + ": " + what);
    }

    const Line &next(std::string_view expecting)
    {
        if (m_pos >= m_lines.size())
            fail(Errc::ParseError, "offset " + std::to_string(m_endOffset) + ": truncated image, expected " +
                                       std::string(expecting));
        return m_lines[m_pos++];
    }

    std::vector<std::string_view> tokens(const Line &line) const
    {
        std::vector<std::string_view> out;
        std::size_t pos = 0;
        auto t = line.text;
        while (pos < t.size())
        {
            while (pos < t.size() && t[pos] == ' ')
                pos++;
            auto start = pos;
            while (pos < t.size() && t[pos] != ' ')
                pos++;
            if (pos > start)
                out.push_back(t.substr(start, pos - start));
        }
        return out;
    }

    // "<key> <value>" with exactly one value
    std::pair<const Line *, std::string_view> keyed_line(std::string_view key)
    {
        const auto &line = next(key);
        auto tok = tokens(line);
        if (tok.size() != 2 || tok[0] != key)
            error(line, "expected '" + std::string(key) + " <value>'");
        return {&line, tok[1]};
    }

    std::string_view keyed(std::string_view key)
    {
        return keyed_line(key).second;
    }

    std::uint64_t number(std::string_view key)
    {
        auto [line, text] = keyed_line(key);
        return to_number(*line, text);
    }

    bool flag(std::string_view key)
    {
        auto [line, v] = keyed_line(key);
        if (v != "0" && v != "1")
            error(*line, std::string(key) + " must be 0 or 1");
        return v == "1";
    }

    std::uint64_t to_number(const Line &line, std::string_view text) const
    {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            error(line, "bad number '" + std::string(text) + "'");
        return v;
    }

    bool exhausted() const
    {
        for (std::size_t i = m_pos; i < m_lines.size(); i++)
            if (!m_lines[i].text.empty())
                return false;
        return true;
    }

  private:
    std::vector<Line> m_lines;
    std::size_t m_pos = 0;
    std::size_t m_endOffset = 0;
};

} // namespace

std::string save_card_image(const CardImage &card)
{
    const auto &pin = card.pin();
    std::ostringstream out;
    out << kMagic << '\n';
    out << "iccid " << card.iccid() << '\n';
    out << "supi " << card.supi() << '\n';
    out << "k_permanent " << to_hex(card.k_permanent(SecretAccess{}).view()) << '\n';
    out << "pin " << pin.value() << " enabled=" << (pin.enabled() ? 1 : 0) << " retries=" << pin.retries_left() << '/'
        << pin.retry_limit() << '\n';
    out << "seq " << card.seq() << '\n';
    out << "supports_5g_context " << (card.supports_5g_context() ? 1 : 0) << '\n';
    out << "programmable " << (card.programmable() ? 1 : 0) << '\n';
    out << "files " << card.files().size() << '\n';
    for (const auto &[id, entry] : card.files())
    {
        out << id.to_string() << ' ' << to_string(entry.access.read) << ' ' << to_string(entry.access.update) << ' '
            << (entry.body.empty() ? "-" : to_hex(entry.body)) << '\n';
    }
    out << "end\n";
    return out.str();
}

CardImage load_card_image(std::string_view text)
{
    Parser p(text);

    const auto &magic = p.next("header");
    if (magic.text != kMagic)
        p.error(magic, "not a card image (bad header)");

    std::string iccid(p.keyed("iccid"));
    std::string supi(p.keyed("supi"));

    crypto::Key key;
    {
        const auto &line = p.next("k_permanent");
        auto tok = p.tokens(line);
        std::optional<Bytes> raw;
        if (tok.size() == 2 && tok[0] == "k_permanent")
            raw = from_hex(tok[1]);
        if (!raw || raw->size() != crypto::kKeyLength)
            p.error(line, "expected 'k_permanent <32 hex digits>'");
        key = crypto::Key::from(*raw, crypto::KeyKind::Permanent);
    }

    std::optional<PinState> pin;
    {
        const auto &line = p.next("pin");
        auto tok = p.tokens(line);
        if (tok.size() != 4 || tok[0] != "pin" || !tok[2].starts_with("enabled=") || !tok[3].starts_with("retries="))
            p.error(line, "expected 'pin <digits> enabled=<0|1> retries=<left>/<limit>'");
        auto enabled = tok[2].substr(8);
        auto retries = tok[3].substr(8);
        auto slash = retries.find('/');
        if ((enabled != "0" && enabled != "1") || slash == std::string_view::npos)
            p.error(line, "malformed pin flags");
        auto left = p.to_number(line, retries.substr(0, slash));
        auto limit = p.to_number(line, retries.substr(slash + 1));
        try
        {
            pin.emplace(std::string(tok[1]), enabled == "1", static_cast<unsigned>(limit),
                        static_cast<unsigned>(left));
        }
        catch (const Error &e)
        {
            p.error(line, e.what());
        }
    }

    auto seq = p.number("seq");
    bool supports5g = p.flag("supports_5g_context");
    bool programmable = p.flag("programmable");
    auto count = p.number("files");

    FileMap files;
    for (std::uint64_t i = 0; i < count; i++)
    {
        const auto &line = p.next("file line");
        auto tok = p.tokens(line);
        if (tok.size() != 4)
            p.error(line, "expected '<file-id> <read-cond> <update-cond> <body>'");
        auto id = FileId::parse(tok[0]);
        auto read = parse_access(tok[1]);
        auto update = parse_access(tok[2]);
        auto body = tok[3] == "-" ? std::optional<Bytes>(Bytes{}) : from_hex(tok[3]);
        if (!id)
            p.error(line, "bad file id '" + std::string(tok[0]) + "'");
        if (!read || !update)
            p.error(line, "bad access condition");
        if (!body)
            p.error(line, "bad body hex");
        if (!files.emplace(*id, FileEntry{{*read, *update}, std::move(*body)}).second)
            p.error(line, "duplicate file " + id->to_string());
    }

    const auto &end = p.next("end");
    if (end.text != "end")
        p.error(end, "expected 'end'");
    if (!p.exhausted())
        p.error(end, "trailing content after 'end'");

    try
    {
        return CardImage(std::move(iccid), std::move(supi), key, std::move(files), std::move(*pin), seq, supports5g,
                         programmable);
    }
    catch (const Error &e)
    {
        p.error(magic, std::string("inconsistent image: ") + e.what());
    }
}

void write_card_image(const std::filesystem::path &path, const CardImage &card)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(Errc::InvalidArgument, "cannot open " + path.string() + " for writing");
    out << save_card_image(card);
}

CardImage read_card_image(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(Errc::InvalidArgument, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_card_image(buf.str());
}

} // namespace ctxsim::usim
