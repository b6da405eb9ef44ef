#include "kadconn/snapshot.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace kadconn {

namespace {

std::string_view take_line(std::string_view& rest) {
    const std::size_t pos = rest.find('\n');
    if (pos == std::string_view::npos)
        throw SnapshotParseError("snapshot: missing trailing newline");
    std::string_view line = rest.substr(0, pos);
    rest.remove_prefix(pos + 1);
    return line;
}

// Parses "<key>=<non-negative integer>" tokens from the header.
std::int64_t header_field(std::string_view token, std::string_view key) {
    if (token.substr(0, key.size()) != key || token.size() <= key.size() ||
        token[key.size()] != '=')
        throw SnapshotParseError("snapshot: expected header field " + std::string(key));
    const std::string_view digits = token.substr(key.size() + 1);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || value < 0)
        throw SnapshotParseError("snapshot: bad integer in header field " + std::string(key));
    return value;
}

std::vector<std::string_view> split_spaces(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t next = text.find(' ', pos);
        if (next == std::string_view::npos) {
            out.push_back(text.substr(pos));
            break;
        }
        if (next == pos) throw SnapshotParseError("snapshot: repeated or leading space");
        out.push_back(text.substr(pos, next - pos));
        pos = next + 1;
        if (pos == text.size())
            throw SnapshotParseError("snapshot: trailing whitespace");
    }
    return out;
}

}  // namespace

std::string serialize_snapshot(const Snapshot& s) {
    std::string out;
    out += "snapshot t=" + std::to_string(s.time_ms) + " n=" + std::to_string(s.nodes.size()) +
           " b=" + std::to_string(s.bits) + " k=" + std::to_string(s.k) +
           " pass=" + std::to_string(s.pass) + "\n";
    for (const auto& [owner, contacts] : s.nodes) {
        out += to_hex(owner, s.bits);
        out += ':';
        for (std::size_t i = 0; i < contacts.size(); ++i) {
            if (i > 0) out += ' ';
            out += to_hex(contacts[i], s.bits);
        }
        out += '\n';
    }
    out += "stable:";
    for (std::size_t i = 0; i < s.stable_ids.size(); ++i) {
        if (i > 0) out += ' ';
        out += to_hex(s.stable_ids[i], s.bits);
    }
    out += '\n';
    return out;
}

Snapshot parse_snapshot(std::string_view text) {
    Snapshot s;
    std::string_view rest = text;

    const std::string_view header = take_line(rest);
    const std::vector<std::string_view> fields = split_spaces(header);
    if (fields.size() != 5 || fields[0] != "snapshot")
        throw SnapshotParseError("snapshot: malformed header line");
    s.time_ms = header_field(fields[1], "t");
    const std::int64_t live = header_field(fields[2], "n");
    s.bits = static_cast<int>(header_field(fields[3], "b"));
    s.k = static_cast<int>(header_field(fields[4], "k"));
    s.pass = static_cast<int>(header_field(fields[5 - 1], "pass"));
    if (s.bits < 4 || s.bits > NodeId::max_bits)
        throw SnapshotParseError("snapshot: id width out of range");

    const std::size_t hex_width = static_cast<std::size_t>((s.bits + 3) / 4);
    std::set<NodeId> owners;
    for (std::int64_t i = 0; i < live; ++i) {
        const std::string_view line = take_line(rest);
        const std::size_t colon = line.find(':');
        if (colon == std::string_view::npos)
            throw SnapshotParseError("snapshot: node line without ':'");
        NodeId owner;
        try {
            owner = from_hex(line.substr(0, colon), s.bits);
        } catch (const std::invalid_argument& e) {
            throw SnapshotParseError(std::string("snapshot: bad owner id: ") + e.what());
        }
        if (!owners.insert(owner).second)
            throw SnapshotParseError("snapshot: duplicate owner id");

        std::vector<NodeId> contacts;
        const std::string_view tail = line.substr(colon + 1);
        if (!tail.empty()) {
            std::set<NodeId> seen;
            for (std::string_view token : split_spaces(tail)) {
                if (token.size() != hex_width)
                    throw SnapshotParseError("snapshot: contact id has wrong width");
                NodeId contact;
                try {
                    contact = from_hex(token, s.bits);
                } catch (const std::invalid_argument& e) {
                    throw SnapshotParseError(std::string("snapshot: bad contact id: ") + e.what());
                }
                if (contact == owner)
                    throw SnapshotParseError("snapshot: owner listed as its own contact");
                if (!seen.insert(contact).second)
                    throw SnapshotParseError("snapshot: duplicate contact id");
                contacts.push_back(contact);
            }
        }
        s.nodes.emplace_back(owner, std::move(contacts));
    }

    const std::string_view stable_line = take_line(rest);
    constexpr std::string_view prefix = "stable:";
    if (stable_line.substr(0, prefix.size()) != prefix)
        throw SnapshotParseError("snapshot: missing stable line");
    const std::string_view tail = stable_line.substr(prefix.size());
    if (!tail.empty()) {
        for (std::string_view token : split_spaces(tail)) {
            try {
                s.stable_ids.push_back(from_hex(token, s.bits));
            } catch (const std::invalid_argument& e) {
                throw SnapshotParseError(std::string("snapshot: bad stable id: ") + e.what());
            }
        }
    }
    if (!rest.empty()) throw SnapshotParseError("snapshot: trailing content after stable line");
    return s;
}

}  // namespace kadconn
