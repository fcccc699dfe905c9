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

#include "ctxsim/usim.hpp"

#include <algorithm>
#include <cstdio>

#include "ctxsim/error.hpp"

namespace ctxsim::usim
{

std::string FileId::to_string() const
{
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%04X", id);
    return buf;
}

std::optional<FileId> FileId::parse(std::string_view hex)
{
    auto raw = from_hex(hex);
    if (!raw || raw->size() != 2)
        return std::nullopt;
    return FileId{static_cast<std::uint16_t>(((*raw)[0] << 8) | (*raw)[1])};
}

std::string_view to_string(Access a)
{
    switch (a)
    {
    case Access::Alw:
        return "ALW";
    case Access::Pin:
        return "PIN";
    case Access::Adm:
        return "ADM";
    case Access::Nev:
        return "NEV";
    }
    return "?";
}

std::optional<Access> parse_access(std::string_view text)
{
    for (auto a : {Access::Alw, Access::Pin, Access::Adm, Access::Nev})
        if (text == to_string(a))
            return a;
    return std::nullopt;
}

std::string_view to_string(Status s)
{
    switch (s)
    {
    case Status::Ok:
        return "OK";
    case Status::SecurityNotSatisfied:
        return "SECURITY_NOT_SATISFIED";
    case Status::FileNotFound:
        return "FILE_NOT_FOUND";
    case Status::PinBlocked:
        return "PIN_BLOCKED";
    case Status::AuthFailure:
        return "AUTH_FAILURE";
    }
    return "?";
}

PinState::PinState(std::string value, bool enabled, unsigned retry_limit, std::optional<unsigned> retries_left)
    : m_value(std::move(value)), m_enabled(enabled), m_retryLimit(retry_limit),
      m_retriesLeft(retries_left.value_or(retry_limit))
{
    if (!well_formed(m_value))
        fail(Errc::InvalidArgument, "PIN must be 4-8 decimal digits");
    if (m_retryLimit == 0 || m_retriesLeft > m_retryLimit)
        fail(Errc::InvalidArgument, "inconsistent PIN retry counter");
}

bool PinState::well_formed(std::string_view candidate)
{
    return candidate.size() >= 4 && candidate.size() <= 8 &&
           std::all_of(candidate.begin(), candidate.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Apdu Apdu::select(FileId f)
{
    return Apdu{Command::Select, f, {}};
}

Apdu Apdu::verify_pin(std::string_view digits)
{
    return Apdu{Command::VerifyPin, {}, to_bytes(digits)};
}

Apdu Apdu::read(FileId f)
{
    return Apdu{Command::Read, f, {}};
}

Apdu Apdu::update(FileId f, Bytes body)
{
    return Apdu{Command::Update, f, std::move(body)};
}

Apdu Apdu::authenticate(ByteView rand, ByteView autn)
{
    Apdu a{Command::Authenticate, {}, {}};
    append(a.payload, rand);
    append(a.payload, autn);
    return a;
}

std::optional<crypto::AkaResult> decode_aka_response(ByteView payload)
{
    constexpr auto k = crypto::kKeyLength;
    if (payload.size() != crypto::kResLength + 2 * k)
        return std::nullopt;
    crypto::AkaResult out;
    out.res.assign(payload.begin(), payload.begin() + crypto::kResLength);
    out.ck = crypto::Key::from(payload.subspan(crypto::kResLength, k), crypto::KeyKind::CK);
    out.ik = crypto::Key::from(payload.subspan(crypto::kResLength + k, k), crypto::KeyKind::IK);
    return out;
}

AccessRule context_file_rule(FileId id, bool hardened)
{
    if (id == file::kImsi)
        return {Access::Pin, Access::Adm};
    if (hardened && (id == file::kEpsNsc || id == file::k5gsNsc))
        return {Access::Adm, Access::Pin};
    return {Access::Pin, Access::Pin};
}

CardImage::CardImage(std::string iccid, std::string supi, crypto::Key k_permanent, FileMap files, PinState pin,
                     std::uint64_t seq, bool supports_5g_context, bool programmable)
    : m_iccid(std::move(iccid)), m_kPermanent(k_permanent), m_files(std::move(files)), m_pin(std::move(pin)),
      m_seq(seq), m_supports5gContext(supports_5g_context), m_programmable(programmable)
{
    if (m_iccid.empty())
        fail(Errc::InvalidArgument, "card needs an ICCID");
    if (m_kPermanent.kind != crypto::KeyKind::Permanent)
        fail(Errc::WrongKeyKind, "card key must be a permanent key");

    auto imsi = m_files.find(file::kImsi);
    if (imsi == m_files.end())
        m_files.emplace(file::kImsi, FileEntry{context_file_rule(file::kImsi, false), to_bytes(supi)});
    else if (to_text(imsi->second.body) != supi)
        fail(Errc::InvalidArgument, "IMSI file disagrees with the card identity");

    if (m_supports5gContext && (!m_files.contains(file::k5gsLoci) || !m_files.contains(file::k5gsNsc)))
        fail(Errc::InvalidArgument, "5G context storage requires files 4F01 and 4F03");
}

CardImage CardImage::issue(std::string iccid, std::string supi, crypto::Key k_permanent, PinState pin,
                           bool supports_5g_context, bool hardened)
{
    FileMap files;
    files[file::kImsi] = {context_file_rule(file::kImsi, hardened), to_bytes(supi)};
    for (auto id : {file::kEpsLoci, file::kEpsNsc})
        files[id] = {context_file_rule(id, hardened), {}};
    if (supports_5g_context)
        for (auto id : {file::k5gsLoci, file::k5gsNsc})
            files[id] = {context_file_rule(id, hardened), {}};
    return CardImage(std::move(iccid), std::move(supi), k_permanent, std::move(files), std::move(pin), 0,
                     supports_5g_context, false);
}

std::string CardImage::supi() const
{
    return to_text(m_files.at(file::kImsi).body);
}

bool CardImage::allowed(const CardSession &session, Access condition) const
{
    switch (condition)
    {
    case Access::Alw:
        return true;
    case Access::Pin:
        if (m_pin.locked())
            return false;
        // the baseband reads after the holder has unlocked the card
        return !m_pin.enabled() || session.origin() == Origin::Baseband || session.pin_verified();
    case Access::Adm:
        return session.has_adm();
    case Access::Nev:
        return false;
    }
    return false;
}

bool CardImage::read_allowed(const CardSession &session, Access condition) const
{
    return allowed(session, condition);
}

ApduResponse CardImage::execute(CardSession &session, const Apdu &apdu)
{
    switch (apdu.command)
    {
    case Command::Select:
        return {m_files.contains(apdu.file) ? Status::Ok : Status::FileNotFound, {}};
    case Command::VerifyPin:
        return verify_pin(session, to_text(apdu.payload));
    case Command::Read:
        return read_file(session, apdu.file);
    case Command::Update:
        return update_file(session, apdu.file, apdu.payload);
    case Command::Authenticate: {
        if (apdu.payload.size() != crypto::kRandLength + crypto::kAutnLength)
            return {Status::AuthFailure, {}};
        ByteView p(apdu.payload);
        return run_aka(p.first(crypto::kRandLength), p.subspan(crypto::kRandLength));
    }
    }
    return {Status::FileNotFound, {}};
}

ApduResponse CardImage::verify_pin(CardSession &session, std::string_view candidate)
{
    if (!m_pin.enabled())
        return {Status::Ok, {}};
    if (m_pin.locked())
        return {Status::PinBlocked, {}};
    if (!PinState::well_formed(candidate))
        return {Status::SecurityNotSatisfied, {}};

    if (candidate == m_pin.m_value)
    {
        session.m_pinVerified = true;
        m_pin.m_retriesLeft = m_pin.m_retryLimit;
        return {Status::Ok, {}};
    }

    session.m_pinVerified = false;
    m_pin.m_retriesLeft--;
    return {m_pin.locked() ? Status::PinBlocked : Status::SecurityNotSatisfied, {}};
}

ApduResponse CardImage::read_file(const CardSession &session, FileId id) const
{
    auto it = m_files.find(id);
    if (it == m_files.end())
        return {Status::FileNotFound, {}};
    if (!allowed(session, it->second.access.read))
        return {Status::SecurityNotSatisfied, {}};
    return {Status::Ok, it->second.body};
}

ApduResponse CardImage::update_file(const CardSession &session, FileId id, Bytes body)
{
    auto it = m_files.find(id);
    if (it == m_files.end())
        return {Status::FileNotFound, {}};
    if (!allowed(session, it->second.access.update))
        return {Status::SecurityNotSatisfied, {}};
    it->second.body = std::move(body);
    return {Status::Ok, {}};
}

ApduResponse CardImage::run_aka(ByteView rand, ByteView autn)
{
    auto result = crypto::check_autn(m_kPermanent, rand, autn);
    if (!result)
        return {Status::AuthFailure, {}};
    m_seq = std::max(m_seq, result->seq);

    ApduResponse resp{Status::Ok, result->res};
    append(resp.payload, result->ck.view());
    append(resp.payload, result->ik.view());
    return resp;
}

bool CardImage::supports(nas::Generation gen) const
{
    if (gen == nas::Generation::G5)
        return m_supports5gContext;
    return m_files.contains(file::kEpsLoci) && m_files.contains(file::kEpsNsc);
}

namespace
{

std::pair<FileId, FileId> context_files_for(nas::Generation gen)
{
    if (gen == nas::Generation::G5)
        return {file::k5gsLoci, file::k5gsNsc};
    return {file::kEpsLoci, file::kEpsNsc};
}

} // namespace

void CardImage::store_context_files(ByteView loci, ByteView nsc, nas::Generation gen)
{
    if (!supports(gen))
        fail(Errc::UnsupportedGeneration, "card " + m_iccid + " cannot hold a " + std::string(nas::to_string(gen)) +
                                              " security context");
    auto [loci_id, nsc_id] = context_files_for(gen);
    m_files.at(loci_id).body.assign(loci.begin(), loci.end());
    m_files.at(nsc_id).body.assign(nsc.begin(), nsc.end());
}

ContextFiles CardImage::load_context_files(nas::Generation gen) const
{
    if (!supports(gen))
        fail(Errc::UnsupportedGeneration, "card " + m_iccid + " cannot hold a " + std::string(nas::to_string(gen)) +
                                              " security context");
    auto [loci_id, nsc_id] = context_files_for(gen);
    return {m_files.at(loci_id).body, m_files.at(nsc_id).body};
}

} // namespace ctxsim::usim
