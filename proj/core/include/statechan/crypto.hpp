#pragma once

#include <optional>
#include <vector>

#include "statechan/bytes.hpp"
#include "statechan/rng.hpp"

namespace statechan::crypto {

Bytes sha256(const Bytes& data);

// ---------------------------------------------------------------------------
// Hash commitments: com = SHA-256(message || randomness), randomness 32 bytes.

constexpr size_t kCommitRandLen = 32;

struct Opening {
    Bytes message;
    Bytes randomness;  // exactly 32 bytes
};

Bytes commit(const Opening& o);
bool verify_open(const Opening& o, const Bytes& com);

// ---------------------------------------------------------------------------
// secp256k1 group. Scalars are 32-byte big-endian values reduced mod the
// group order; points are 33-byte compressed encodings, with the identity
// represented as the empty byte string.

struct Scalar {
    Bytes be;  // 32 bytes, value < group order

    static Scalar zero();
    static Scalar from_u64(uint64_t v);
    static Scalar from_bytes_mod_order(const Bytes& b);
    static Scalar random(Rng& rng);

    bool is_zero() const;
    Scalar add(const Scalar& o) const;
    Scalar mul(const Scalar& o) const;

    bool operator==(const Scalar& o) const { return be == o.be; }
};

struct GroupElement {
    Bytes data;  // 33-byte compressed point, or empty for the identity

    static GroupElement identity();
    static GroupElement generator();
    /// Parses a compressed encoding; rejects anything not on the curve.
    static std::optional<GroupElement> from_bytes(const Bytes& b);

    bool is_identity() const { return data.empty(); }
    GroupElement add(const GroupElement& o) const;
    GroupElement mul(const Scalar& k) const;
    /// 32-byte big-endian x coordinate; identity has none.
    Bytes x_bytes() const;

    bool operator==(const GroupElement& o) const { return data == o.data; }
};

/// Generator times k.
GroupElement base_mul(const Scalar& k);

/// Try-and-increment hash to a curve point; never returns the identity.
GroupElement hash_to_curve(const Bytes& label);

// ---------------------------------------------------------------------------
// Schnorr signatures. sig = R(33 bytes, compressed) || s(32 bytes) with
// s*G = R + c*pk, c = H(R.x || pk || m). Signing nonces are derived
// deterministically from (sk, m) so traces replay byte-identically.

struct SigKeyPair {
    Scalar sk;
    GroupElement pk;
};

SigKeyPair sig_keygen(Rng& rng);
Bytes sig_sign(const SigKeyPair& key, const Bytes& m);
bool sig_verify(const GroupElement& pk, const Bytes& m, const Bytes& sig);

// ---------------------------------------------------------------------------
// Schnorr multisignature over a fixed party set: pk_master is the sum of the
// per-party keys, and the joint signature verifies like an ordinary Schnorr
// signature against pk_master (verification cost independent of n). The
// interactive nonce commit/reveal rounds run among simulated parties inside
// multi_sign.

struct MultiKey {
    std::vector<Scalar> shares;
    std::vector<GroupElement> share_pks;
    GroupElement pk_master;
};

MultiKey multi_keygen(size_t n, Rng& rng);
/// All n shares must be present; a missing share yields nullopt.
std::optional<Bytes> multi_sign(const Bytes& m,
                                const std::vector<std::optional<Scalar>>& shares,
                                const GroupElement& pk_master);
bool multi_verify(const GroupElement& pk_master, const Bytes& m, const Bytes& sig);

// ---------------------------------------------------------------------------
// NIZK proof of equality of discrete logarithms (Fiat-Shamir): statement
// X = x*G, Y = x*H; challenge c = SHA-256(KY.x || KX.x) mod order; response
// s = k + c*x. Verification checks both halves: s*G = KX + c*X and
// s*H = KY + c*Y, with on-curve/non-identity checks on every point.

struct DlogEqProof {
    GroupElement kx;
    GroupElement ky;
    Scalar s;
};

std::optional<DlogEqProof> nizk_prove(const Scalar& x, const GroupElement& g,
                                      const GroupElement& h, Rng& rng);
/// Same proof with a caller-chosen nonce; used for reproducible test vectors.
std::optional<DlogEqProof> nizk_prove_with_nonce(const Scalar& x, const GroupElement& g,
                                                 const GroupElement& h, const Scalar& k);
bool nizk_verify(const GroupElement& g, const GroupElement& h, const GroupElement& x,
                 const GroupElement& y, const DlogEqProof& proof);

/// The Fiat-Shamir challenge; exposed so the byte order can be pinned by test
/// vectors.
Scalar nizk_challenge(const GroupElement& kx, const GroupElement& ky);

}  // namespace statechan::crypto
