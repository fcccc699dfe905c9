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

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ctxsim/bytes.hpp"
#include "ctxsim/crypto.hpp"
#include "ctxsim/nas.hpp"

namespace ctxsim::usim
{

struct FileId
{
    std::uint16_t id = 0;

    std::string to_string() const;
    static std::optional<FileId> parse(std::string_view hex);
    auto operator<=>(const FileId &) const = default;
};

namespace file
{
constexpr FileId kImsi{0x6F07};
constexpr FileId kEpsLoci{0x6FE3};
constexpr FileId kEpsNsc{0x6FE4};
constexpr FileId k5gsLoci{0x4F01};
constexpr FileId k5gsNsc{0x4F03};
} // namespace file

enum class Access
{
    Alw,
    Pin,
    Adm,
    Nev,
};

std::string_view to_string(Access a);
std::optional<Access> parse_access(std::string_view text);

struct AccessRule
{
    Access read = Access::Pin;
    Access update = Access::Pin;

    bool operator==(const AccessRule &) const = default;
};

struct FileEntry
{
    AccessRule access;
    Bytes body;

    bool operator==(const FileEntry &) const = default;
};

using FileMap = std::map<FileId, FileEntry>;

constexpr unsigned kDefaultRetryLimit = 3;

class PinState
{
  public:
    /// Throws InvalidArgument for a value outside 4-8 decimal digits or an
    /// inconsistent retry counter.
    PinState(std::string value, bool enabled, unsigned retry_limit = kDefaultRetryLimit,
             std::optional<unsigned> retries_left = std::nullopt);

    static bool well_formed(std::string_view candidate);

    const std::string &value() const
    {
        return m_value;
    }
    bool enabled() const
    {
        return m_enabled;
    }
    unsigned retry_limit() const
    {
        return m_retryLimit;
    }
    unsigned retries_left() const
    {
        return m_retriesLeft;
    }
    bool locked() const
    {
        return m_retriesLeft == 0;
    }

    bool operator==(const PinState &) const = default;

  private:
    friend class CardImage;

    std::string m_value;
    bool m_enabled;
    unsigned m_retryLimit;
    unsigned m_retriesLeft;
};

enum class Origin
{
    // the ME the card sits in; holds the operator's ADM credential
    Baseband,
    // anything talking to the card through a reader interface: a USB reader,
    // malware on the phone, a SIM sticker
    Reader,
};

class CardSession
{
  public:
    explicit CardSession(Origin origin, std::string label = {}) : m_origin(origin), m_label(std::move(label))
    {
    }

    Origin origin() const
    {
        return m_origin;
    }
    const std::string &label() const
    {
        return m_label;
    }
    bool pin_verified() const
    {
        return m_pinVerified;
    }
    bool has_adm() const
    {
        return m_origin == Origin::Baseband;
    }

  private:
    friend class CardImage;

    Origin m_origin;
    std::string m_label;
    bool m_pinVerified = false;
};

enum class Command
{
    Select,
    VerifyPin,
    Read,
    Update,
    Authenticate,
};

struct Apdu
{
    Command command = Command::Select;
    FileId file;
    Bytes payload;

    static Apdu select(FileId f);
    static Apdu verify_pin(std::string_view digits);
    static Apdu read(FileId f);
    static Apdu update(FileId f, Bytes body);
    static Apdu authenticate(ByteView rand, ByteView autn);
};

enum class Status
{
    Ok,
    SecurityNotSatisfied,
    FileNotFound,
    PinBlocked,
    AuthFailure,
};

std::string_view to_string(Status s);

struct ApduResponse
{
    Status status = Status::Ok;
    Bytes payload;

    bool ok() const
    {
        return status == Status::Ok;
    }
};

/// Decodes the payload of a successful AUTHENTICATE response.
std::optional<crypto::AkaResult> decode_aka_response(ByteView payload);

struct ContextFiles
{
    Bytes loci;
    Bytes nsc;
};

class CardImage;

/// Passkey for the few places allowed to see the permanent key of a card
/// (image persistence). Nothing in the attack harness can construct one.
class SecretAccess
{
    friend std::string save_card_image(const CardImage &card);
    SecretAccess() = default;
};

/// Default access rules for the context-bearing files; `hardened` escalates
/// reads of the NAS security context files to ADM.
AccessRule context_file_rule(FileId id, bool hardened);

class CardImage
{
  public:
    /// Files missing 6F07 get one holding `supi`. A card that advertises 5G
    /// context storage must carry 4F01 and 4F03.
    CardImage(std::string iccid, std::string supi, crypto::Key k_permanent, FileMap files, PinState pin,
              std::uint64_t seq = 0, bool supports_5g_context = false, bool programmable = false);

    /// An operator-issued card with the standard file set.
    static CardImage issue(std::string iccid, std::string supi, crypto::Key k_permanent, PinState pin,
                           bool supports_5g_context, bool hardened);

    const std::string &iccid() const
    {
        return m_iccid;
    }
    std::string supi() const;
    const FileMap &files() const
    {
        return m_files;
    }
    const PinState &pin() const
    {
        return m_pin;
    }
    std::uint64_t seq() const
    {
        return m_seq;
    }
    bool supports_5g_context() const
    {
        return m_supports5gContext;
    }
    bool programmable() const
    {
        return m_programmable;
    }

    const crypto::Key &k_permanent(SecretAccess) const
    {
        return m_kPermanent;
    }

    /// Dispatches one command. Session state only changes on VERIFY_PIN.
    ApduResponse execute(CardSession &session, const Apdu &apdu);

    ApduResponse verify_pin(CardSession &session, std::string_view candidate);
    ApduResponse read_file(const CardSession &session, FileId id) const;
    ApduResponse update_file(const CardSession &session, FileId id, Bytes body);
    ApduResponse run_aka(ByteView rand, ByteView autn);

    bool read_allowed(const CardSession &session, Access condition) const;

    /// True when this card has the LOCI/NSC pair for the generation.
    bool supports(nas::Generation gen) const;

    /// ME-facing context storage. Throws UnsupportedGeneration when the card
    /// lacks the files for `gen`.
    void store_context_files(ByteView loci, ByteView nsc, nas::Generation gen);
    ContextFiles load_context_files(nas::Generation gen) const;

    bool operator==(const CardImage &) const = default;

  private:
    bool allowed(const CardSession &session, Access condition) const;

    std::string m_iccid;
    crypto::Key m_kPermanent;
    FileMap m_files;
    PinState m_pin;
    std::uint64_t m_seq;
    bool m_supports5gContext;
    bool m_programmable;
};

} // namespace ctxsim::usim
