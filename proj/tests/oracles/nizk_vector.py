#!/usr/bin/env python3
"""Independent generator for the discrete-log-equality golden vector.

Pure-Python secp256k1 arithmetic, no shared code with the C++ library.
The printed hex constants are frozen into test_crypto.cpp; rerunning this
script must reproduce them byte for byte.
"""

import hashlib

P = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F
N = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141
GX = 0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798
GY = 0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8


def inv(a):
    return pow(a, P - 2, P)


def add(p, q):
    if p is None:
        return q
    if q is None:
        return p
    (x1, y1), (x2, y2) = p, q
    if x1 == x2 and (y1 + y2) % P == 0:
        return None
    if p == q:
        lam = (3 * x1 * x1) * inv(2 * y1) % P
    else:
        lam = (y2 - y1) * inv(x2 - x1) % P
    x3 = (lam * lam - x1 - x2) % P
    return (x3, (lam * (x1 - x3) - y1) % P)


def mul(k, p):
    r = None
    while k:
        if k & 1:
            r = add(r, p)
        p = add(p, p)
        k >>= 1
    return r


def compress(p):
    x, y = p
    return bytes([2 + (y & 1)]) + x.to_bytes(32, "big")


def decompress_even(xb):
    x = int.from_bytes(xb, "big")
    if x >= P:
        return None
    y2 = (pow(x, 3, P) + 7) % P
    y = pow(y2, (P + 1) // 4, P)
    if y * y % P != y2:
        return None
    if y & 1:
        y = P - y
    return (x, y)


def sha(b):
    return hashlib.sha256(b).digest()


def hash_to_curve(label):
    counter = 0
    while True:
        cand = decompress_even(sha(label + counter.to_bytes(4, "big")))
        if cand is not None:
            return cand
        counter += 1


def main():
    g = (GX, GY)
    h = hash_to_curve(b"nizk-golden-h")
    x = int.from_bytes(sha(b"nizk-golden-x"), "big") % N
    k = int.from_bytes(sha(b"nizk-golden-k"), "big") % N

    big_x = mul(x, g)
    big_y = mul(x, h)
    kx = mul(k, g)
    ky = mul(k, h)
    # Challenge byte order: H(KY.x || KX.x), 32-byte big-endian coordinates.
    c = int.from_bytes(sha(ky[0].to_bytes(32, "big") + kx[0].to_bytes(32, "big")), "big") % N
    s = (k + c * x) % N

    print("h ", compress(h).hex())
    print("x ", x.to_bytes(32, "big").hex())
    print("k ", k.to_bytes(32, "big").hex())
    print("X ", compress(big_x).hex())
    print("Y ", compress(big_y).hex())
    print("KX", compress(kx).hex())
    print("KY", compress(ky).hex())
    print("c ", c.to_bytes(32, "big").hex())
    print("s ", s.to_bytes(32, "big").hex())


if __name__ == "__main__":
    main()
