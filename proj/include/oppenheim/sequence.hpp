#pragma once

#include "oppenheim/errors.hpp"

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace oppenheim {

/**
 * A real sequence indexed from n = 1, given by a closed-form tag
 * ("constant:v", "linear:s" meaning s*n with "linear:n" = n,
 * "reciprocal:s" meaning s/n) or by explicit values whose last entry repeats.
 */
class ParamSequence {
public:
    enum class Kind { constant, linear, reciprocal, explicit_values };

    ParamSequence() = default;

    static ParamSequence constant(double v) { return {Kind::constant, v, {}}; }
    static ParamSequence linear(double slope) { return {Kind::linear, slope, {}}; }
    static ParamSequence reciprocal(double scale) { return {Kind::reciprocal, scale, {}}; }
    static ParamSequence values(std::vector<double> v) {
        if (v.empty()) throw ArgumentError("ParamSequence: explicit value list is empty");
        return {Kind::explicit_values, 0.0, std::move(v)};
    }

    /// Parses "constant:1", "linear:n", "linear:2", "reciprocal:1", "[v1,v2,...]" or a bare number.
    static ParamSequence parse(std::string_view tag) {
        if (!tag.empty() && tag.front() == '[') {
            if (tag.back() != ']') throw ArgumentError("ParamSequence: unterminated list '" + std::string(tag) + "'");
            std::vector<double> v;
            auto body = tag.substr(1, tag.size() - 2);
            while (!body.empty()) {
                const auto comma = body.find(',');
                auto item = body.substr(0, comma);
                while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
                while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
                v.push_back(parse_number(item, tag));
                if (comma == std::string_view::npos) break;
                body.remove_prefix(comma + 1);
            }
            return values(std::move(v));
        }
        const auto colon = tag.find(':');
        if (colon == std::string_view::npos) return constant(parse_number(tag, tag));
        const auto head = tag.substr(0, colon);
        const auto body = tag.substr(colon + 1);
        if (head == "constant") return constant(parse_number(body, tag));
        if (head == "linear") return linear(body == "n" ? 1.0 : parse_number(body, tag));
        if (head == "reciprocal") return reciprocal(body == "n" ? 1.0 : parse_number(body, tag));
        throw ArgumentError("ParamSequence: unknown tag '" + std::string(tag) + "'");
    }

    double operator()(std::size_t n) const {
        switch (kind_) {
        case Kind::constant: return scalar_;
        case Kind::linear: return scalar_ * static_cast<double>(n);
        case Kind::reciprocal: return scalar_ / static_cast<double>(n);
        case Kind::explicit_values: return n - 1 < values_.size() ? values_[n - 1] : values_.back();
        }
        return scalar_;
    }

    Kind kind() const { return kind_; }
    bool is_constant() const {
        return kind_ == Kind::constant || (kind_ == Kind::explicit_values && values_.size() == 1);
    }

    std::string to_string() const {
        switch (kind_) {
        case Kind::constant: return "constant:" + fmt(scalar_);
        case Kind::linear: return "linear:" + fmt(scalar_);
        case Kind::reciprocal: return "reciprocal:" + fmt(scalar_);
        case Kind::explicit_values: {
            std::string s = "[";
            for (std::size_t i = 0; i < values_.size(); ++i) s += (i ? "," : "") + fmt(values_[i]);
            return s + "]";
        }
        }
        return {};
    }

    const std::vector<double>& explicit_values() const { return values_; }

private:
    ParamSequence(Kind k, double s, std::vector<double> v) : kind_(k), scalar_(s), values_(std::move(v)) {}

    static double parse_number(std::string_view text, std::string_view whole) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ArgumentError("ParamSequence: cannot parse number in '" + std::string(whole) + "'");
        return v;
    }

    static std::string fmt(double v) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, ptr);
    }

    Kind kind_ = Kind::constant;
    double scalar_ = 1.0;
    std::vector<double> values_;
};

} // namespace oppenheim
