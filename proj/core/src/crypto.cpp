#include "statechan/crypto.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/obj_mac.h>

#include <cassert>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace statechan::crypto {

namespace {

struct BnDeleter {
    void operator()(BIGNUM* p) const { BN_free(p); }
};
struct PointDeleter {
    void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
struct CtxDeleter {
    void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;
using CtxPtr = std::unique_ptr<BN_CTX, CtxDeleter>;

const EC_GROUP* group() {
    static EC_GROUP* g = [] {
        EC_GROUP* gg = EC_GROUP_new_by_curve_name(NID_secp256k1);
        if (!gg) throw std::runtime_error("secp256k1 group unavailable");
        return gg;
    }();
    return g;
}

const BIGNUM* order() {
    static BIGNUM* n = [] {
        BIGNUM* nn = BN_new();
        BN_CTX* ctx = BN_CTX_new();
        EC_GROUP_get_order(group(), nn, ctx);
        BN_CTX_free(ctx);
        return nn;
    }();
    return n;
}

BnPtr bn_from_be32(const Bytes& b) {
    return BnPtr(BN_bin2bn(b.data(), static_cast<int>(b.size()), nullptr));
}

Bytes bn_to_be32(const BIGNUM* v) {
    Bytes out(32, 0);
    BN_bn2binpad(v, out.data(), 32);
    return out;
}

PointPtr point_from_compressed(const Bytes& b) {
    if (b.size() != 33) return nullptr;
    PointPtr p(EC_POINT_new(group()));
    CtxPtr ctx(BN_CTX_new());
    if (EC_POINT_oct2point(group(), p.get(), b.data(), b.size(), ctx.get()) != 1) return nullptr;
    return p;
}

Bytes point_to_compressed(const EC_POINT* p) {
    CtxPtr ctx(BN_CTX_new());
    if (EC_POINT_is_at_infinity(group(), p)) return {};
    Bytes out(33);
    size_t len = EC_POINT_point2oct(group(), p, POINT_CONVERSION_COMPRESSED, out.data(),
                                    out.size(), ctx.get());
    if (len != 33) throw std::runtime_error("point serialization failed");
    return out;
}

}  // namespace

Bytes sha256(const Bytes& data) {
    Bytes out(32);
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
    assert(len == 32);
    return out;
}

Bytes commit(const Opening& o) {
    Bytes buf = o.message;
    buf.insert(buf.end(), o.randomness.begin(), o.randomness.end());
    return sha256(buf);
}

bool verify_open(const Opening& o, const Bytes& com) {
    if (o.randomness.size() != kCommitRandLen) return false;
    return commit(o) == com;
}

// --- Scalar ----------------------------------------------------------------

Scalar Scalar::zero() { return Scalar{Bytes(32, 0)}; }

Scalar Scalar::from_u64(uint64_t v) {
    Bytes b(32, 0);
    for (int i = 0; i < 8; ++i) b[31 - i] = static_cast<uint8_t>(v >> (8 * i));
    return Scalar{std::move(b)};
}

Scalar Scalar::from_bytes_mod_order(const Bytes& b) {
    BnPtr v(BN_bin2bn(b.data(), static_cast<int>(b.size()), nullptr));
    CtxPtr ctx(BN_CTX_new());
    BnPtr r(BN_new());
    BN_mod(r.get(), v.get(), order(), ctx.get());
    return Scalar{bn_to_be32(r.get())};
}

Scalar Scalar::random(Rng& rng) {
    // Oversample by 16 bytes before reduction; the bias is negligible.
    Bytes wide = rng.bytes(48);
    Scalar s = from_bytes_mod_order(wide);
    while (s.is_zero()) s = from_bytes_mod_order(rng.bytes(48));
    return s;
}

bool Scalar::is_zero() const {
    for (uint8_t c : be)
        if (c != 0) return false;
    return true;
}

Scalar Scalar::add(const Scalar& o) const {
    BnPtr a = bn_from_be32(be), b = bn_from_be32(o.be), r(BN_new());
    CtxPtr ctx(BN_CTX_new());
    BN_mod_add(r.get(), a.get(), b.get(), order(), ctx.get());
    return Scalar{bn_to_be32(r.get())};
}

Scalar Scalar::mul(const Scalar& o) const {
    BnPtr a = bn_from_be32(be), b = bn_from_be32(o.be), r(BN_new());
    CtxPtr ctx(BN_CTX_new());
    BN_mod_mul(r.get(), a.get(), b.get(), order(), ctx.get());
    return Scalar{bn_to_be32(r.get())};
}

// --- GroupElement ----------------------------------------------------------

GroupElement GroupElement::identity() { return GroupElement{}; }

GroupElement GroupElement::generator() {
    return GroupElement{point_to_compressed(EC_GROUP_get0_generator(group()))};
}

std::optional<GroupElement> GroupElement::from_bytes(const Bytes& b) {
    if (b.empty()) return identity();
    PointPtr p = point_from_compressed(b);
    if (!p) return std::nullopt;
    return GroupElement{b};
}

GroupElement GroupElement::add(const GroupElement& o) const {
    if (is_identity()) return o;
    if (o.is_identity()) return *this;
    PointPtr a = point_from_compressed(data), b = point_from_compressed(o.data);
    if (!a || !b) throw std::runtime_error("corrupt point");
    PointPtr r(EC_POINT_new(group()));
    CtxPtr ctx(BN_CTX_new());
    EC_POINT_add(group(), r.get(), a.get(), b.get(), ctx.get());
    return GroupElement{point_to_compressed(r.get())};
}

GroupElement GroupElement::mul(const Scalar& k) const {
    if (is_identity() || k.is_zero()) return identity();
    PointPtr p = point_from_compressed(data);
    if (!p) throw std::runtime_error("corrupt point");
    BnPtr kk = bn_from_be32(k.be);
    PointPtr r(EC_POINT_new(group()));
    CtxPtr ctx(BN_CTX_new());
    EC_POINT_mul(group(), r.get(), nullptr, p.get(), kk.get(), ctx.get());
    return GroupElement{point_to_compressed(r.get())};
}

Bytes GroupElement::x_bytes() const {
    if (is_identity()) return {};
    PointPtr p = point_from_compressed(data);
    BnPtr x(BN_new()), y(BN_new());
    CtxPtr ctx(BN_CTX_new());
    EC_POINT_get_affine_coordinates(group(), p.get(), x.get(), y.get(), ctx.get());
    return bn_to_be32(x.get());
}

GroupElement base_mul(const Scalar& k) {
    if (k.is_zero()) return GroupElement::identity();
    BnPtr kk = bn_from_be32(k.be);
    PointPtr r(EC_POINT_new(group()));
    CtxPtr ctx(BN_CTX_new());
    EC_POINT_mul(group(), r.get(), kk.get(), nullptr, nullptr, ctx.get());
    return GroupElement{point_to_compressed(r.get())};
}

GroupElement hash_to_curve(const Bytes& label) {
    for (uint32_t counter = 0;; ++counter) {
        Bytes buf = label;
        for (int i = 3; i >= 0; --i) buf.push_back(static_cast<uint8_t>(counter >> (8 * i)));
        Bytes digest = sha256(buf);
        Bytes candidate;
        candidate.push_back(0x02);  // even-y branch
        candidate.insert(candidate.end(), digest.begin(), digest.end());
        if (auto p = GroupElement::from_bytes(candidate); p && !p->is_identity()) return *p;
    }
}

// --- Schnorr signatures ----------------------------------------------------

namespace {

Scalar sig_challenge(const Bytes& r_x, const GroupElement& pk, const Bytes& m) {
    Bytes buf = r_x;
    buf.insert(buf.end(), pk.data.begin(), pk.data.end());
    buf.insert(buf.end(), m.begin(), m.end());
    return Scalar::from_bytes_mod_order(sha256(buf));
}

bool schnorr_verify(const GroupElement& pk, const Bytes& m, const Bytes& sig) {
    if (sig.size() != 65 || pk.is_identity()) return false;
    Bytes r_bytes(sig.begin(), sig.begin() + 33);
    Bytes s_bytes(sig.begin() + 33, sig.end());
    auto r = GroupElement::from_bytes(r_bytes);
    if (!r || r->is_identity()) return false;
    Scalar s = Scalar::from_bytes_mod_order(s_bytes);
    if (s.be != s_bytes) return false;  // non-canonical s
    Scalar c = sig_challenge(r->x_bytes(), pk, m);
    return base_mul(s) == r->add(pk.mul(c));
}

}  // namespace

SigKeyPair sig_keygen(Rng& rng) {
    Scalar sk = Scalar::random(rng);
    return SigKeyPair{sk, base_mul(sk)};
}

Bytes sig_sign(const SigKeyPair& key, const Bytes& m) {
    // Deterministic nonce k = H(sk || m), retried on the (negligible) zero case.
    Bytes seed = key.sk.be;
    seed.insert(seed.end(), m.begin(), m.end());
    Scalar k = Scalar::from_bytes_mod_order(sha256(seed));
    while (k.is_zero()) {
        seed.push_back(0x01);
        k = Scalar::from_bytes_mod_order(sha256(seed));
    }
    GroupElement r = base_mul(k);
    Scalar c = sig_challenge(r.x_bytes(), key.pk, m);
    Scalar s = k.add(c.mul(key.sk));
    Bytes sig = r.data;
    sig.insert(sig.end(), s.be.begin(), s.be.end());
    return sig;
}

bool sig_verify(const GroupElement& pk, const Bytes& m, const Bytes& sig) {
    return schnorr_verify(pk, m, sig);
}

// --- Multisignature --------------------------------------------------------

MultiKey multi_keygen(size_t n, Rng& rng) {
    MultiKey mk;
    GroupElement master = GroupElement::identity();
    for (size_t i = 0; i < n; ++i) {
        Scalar s = Scalar::random(rng);
        mk.shares.push_back(s);
        mk.share_pks.push_back(base_mul(s));
        master = master.add(mk.share_pks.back());
    }
    mk.pk_master = master;
    return mk;
}

std::optional<Bytes> multi_sign(const Bytes& m, const std::vector<std::optional<Scalar>>& shares,
                                const GroupElement& pk_master) {
    // Round 1+2 (nonce commit and reveal) collapse for simulated parties:
    // each share derives its nonce deterministically, the joint nonce point
    // is the sum. Round 3 sums the partial responses.
    std::vector<Scalar> nonces;
    GroupElement r = GroupElement::identity();
    for (size_t i = 0; i < shares.size(); ++i) {
        if (!shares[i]) return std::nullopt;
        Bytes seed = shares[i]->be;
        seed.push_back(static_cast<uint8_t>(i));
        seed.insert(seed.end(), m.begin(), m.end());
        Scalar k = Scalar::from_bytes_mod_order(sha256(seed));
        while (k.is_zero()) {
            seed.push_back(0x01);
            k = Scalar::from_bytes_mod_order(sha256(seed));
        }
        nonces.push_back(k);
        r = r.add(base_mul(k));
    }
    if (r.is_identity()) return std::nullopt;
    Scalar c = sig_challenge(r.x_bytes(), pk_master, m);
    Scalar s = Scalar::zero();
    for (size_t i = 0; i < shares.size(); ++i) s = s.add(nonces[i].add(c.mul(*shares[i])));
    Bytes sig = r.data;
    sig.insert(sig.end(), s.be.begin(), s.be.end());
    return sig;
}

bool multi_verify(const GroupElement& pk_master, const Bytes& m, const Bytes& sig) {
    return schnorr_verify(pk_master, m, sig);
}

// --- NIZK: equality of discrete logarithms ---------------------------------

Scalar nizk_challenge(const GroupElement& kx, const GroupElement& ky) {
    // Byte order fixed as H(KY.x || KX.x), 32-byte big-endian x coordinates.
    Bytes buf = ky.x_bytes();
    Bytes kxx = kx.x_bytes();
    buf.insert(buf.end(), kxx.begin(), kxx.end());
    return Scalar::from_bytes_mod_order(sha256(buf));
}

std::optional<DlogEqProof> nizk_prove_with_nonce(const Scalar& x, const GroupElement& g,
                                                 const GroupElement& h, const Scalar& k) {
    if (x.is_zero() || k.is_zero() || g.is_identity() || h.is_identity()) return std::nullopt;
    DlogEqProof p;
    p.kx = g.mul(k);
    p.ky = h.mul(k);
    if (p.kx.is_identity() || p.ky.is_identity()) return std::nullopt;
    Scalar c = nizk_challenge(p.kx, p.ky);
    p.s = k.add(c.mul(x));
    return p;
}

std::optional<DlogEqProof> nizk_prove(const Scalar& x, const GroupElement& g,
                                      const GroupElement& h, Rng& rng) {
    return nizk_prove_with_nonce(x, g, h, Scalar::random(rng));
}

bool nizk_verify(const GroupElement& g, const GroupElement& h, const GroupElement& x,
                 const GroupElement& y, const DlogEqProof& proof) {
    for (const GroupElement* p : {&g, &h, &x, &y, &proof.kx, &proof.ky}) {
        if (p->is_identity()) return false;
        if (!GroupElement::from_bytes(p->data)) return false;
    }
    Scalar c = nizk_challenge(proof.kx, proof.ky);
    if (!(g.mul(proof.s) == proof.kx.add(x.mul(c)))) return false;
    if (!(h.mul(proof.s) == proof.ky.add(y.mul(c)))) return false;
    return true;
}

}  // namespace statechan::crypto
