#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace fdd {

// Nonnegative arbitrary-precision integer; just enough for solution counts
// (N_j can reach 2^n with n past the machine word).
class BigUint {
public:
    BigUint() = default;
    explicit BigUint(std::uint64_t v) {
        if (v) limbs_.push_back(v);
    }

    static BigUint power_of_two(int e) {
        BigUint b;
        b.limbs_.assign(static_cast<std::size_t>(e / 64) + 1, 0);
        b.limbs_.back() = std::uint64_t(1) << (e % 64);
        return b;
    }

    bool is_zero() const { return limbs_.empty(); }

    BigUint& operator+=(const BigUint& o) {
        add_shifted(o, 0);
        return *this;
    }

    // *this += o << shift_bits
    void add_shifted(const BigUint& o, int shift_bits) {
        if (o.is_zero()) return;
        if (&o == this) {
            BigUint tmp(o);
            add_shifted(tmp, shift_bits);
            return;
        }
        std::size_t limb_shift = std::size_t(shift_bits) / 64;
        int bit_shift = shift_bits % 64;
        std::size_t top = o.limbs_.size() + limb_shift + 1;
        if (limbs_.size() <= top) limbs_.resize(top + 1, 0);
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i <= o.limbs_.size(); ++i) {
            unsigned __int128 add = carry + limbs_[i + limb_shift];
            if (i < o.limbs_.size())
                add += (unsigned __int128)(o.limbs_[i]) << bit_shift;
            limbs_[i + limb_shift] = std::uint64_t(add);
            carry = add >> 64;
        }
        std::size_t pos = o.limbs_.size() + 1 + limb_shift;
        while (carry) {
            if (pos >= limbs_.size()) limbs_.resize(pos + 1, 0);
            unsigned __int128 add = carry + (unsigned __int128)(limbs_[pos]);
            limbs_[pos] = std::uint64_t(add);
            carry = add >> 64;
            ++pos;
        }
        trim();
    }

    bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }

    // Exact when the value fits; otherwise the usual double rounding.
    double to_double() const {
        double v = 0.0;
        for (std::size_t i = limbs_.size(); i-- > 0;)
            v = v * 18446744073709551616.0 + double(limbs_[i]);
        return v;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint64_t> work = limbs_;
        std::string out;
        while (!work.empty()) {
            // divide by 10^19, the largest power of ten below 2^64
            const std::uint64_t base = 10000000000000000000ull;
            unsigned __int128 rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | work[i];
                work[i] = std::uint64_t(cur / base);
                rem = cur % base;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string chunk = std::to_string(std::uint64_t(rem));
            if (work.empty())
                out.insert(0, chunk);
            else
                out.insert(0, std::string(19 - chunk.size(), '0') + chunk);
        }
        return out;
    }

private:
    std::vector<std::uint64_t> limbs_; // little-endian, no trailing zero limbs

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
};

} // namespace fdd
