#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "avoiders.hpp"
#include "permutation.hpp"
#include "primitive.hpp"

namespace av1324 {

enum class Cell : char { bottom = 'b', top = 't' };

/// A two-cell vertical gridded permutation. `cols` tags each column with
/// its cell; `bottom` and `top` are the reduced words read in each cell.
/// The underlying permutation places all bottom values below all top
/// values and is derived on demand.
struct GriddedDomino {
    std::vector<Cell> cols;
    Permutation bottom;
    Permutation top;

    std::size_t points() const noexcept { return cols.size(); }

    std::vector<int> underlying() const {
        const int b = static_cast<int>(bottom.size());
        std::vector<int> out;
        out.reserve(cols.size());
        std::size_t ib = 0, it = 0;
        for (Cell c : cols) {
            if (c == Cell::bottom)
                out.push_back(bottom.values().at(ib++));
            else
                out.push_back(b + top.values().at(it++));
        }
        return out;
    }

    friend bool operator==(const GriddedDomino&, const GriddedDomino&) = default;
    friend auto operator<=>(const GriddedDomino& x, const GriddedDomino& y) {
        if (auto c = x.cols <=> y.cols; c != 0) return c;
        if (auto c = x.bottom <=> y.bottom; c != 0) return c;
        return x.top <=> y.top;
    }
};

inline bool is_valid_domino(const GriddedDomino& d) {
    std::size_t nb = 0;
    for (Cell c : d.cols) nb += c == Cell::bottom;
    if (nb != d.bottom.size() || d.cols.size() - nb != d.top.size()) return false;
    if (!avoids_132(d.bottom.span()) || !avoids_213(d.top.span())) return false;
    return avoids_1324(d.underlying());
}

/// Reads a primitive through its inverse: with i the position of 1, the
/// entries of the inverse strictly below i go to the bottom cell and those
/// above i+1 to the top cell.
inline GriddedDomino to_domino(const Permutation& p) {
    if (!is_primitive(p)) throw std::domain_error("to_domino needs a primitive: " + to_string(p));
    const Permutation q = inverse(p);
    const int i = q.at(1);
    GriddedDomino d;
    std::vector<int> low, high;
    for (std::size_t c = 1; c + 1 < q.size(); ++c) {
        const int h = q.values()[c];
        if (h < i) {
            d.cols.push_back(Cell::bottom);
            low.push_back(h);
        } else {
            d.cols.push_back(Cell::top);
            high.push_back(h);
        }
    }
    d.bottom = reduce(low);
    d.top = reduce(high);
    return d;
}

inline Permutation from_domino(const GriddedDomino& d) {
    if (!is_valid_domino(d)) throw std::domain_error("invalid 1324-avoiding domino");
    const int b = static_cast<int>(d.bottom.size());
    std::vector<int> q;
    q.reserve(d.points() + 2);
    q.push_back(b + 1);
    std::size_t ib = 0, it = 0;
    for (Cell c : d.cols) {
        if (c == Cell::bottom)
            q.push_back(d.bottom.values()[ib++]);
        else
            q.push_back(b + 2 + d.top.values()[it++]);
    }
    q.push_back(b + 2);
    return inverse(Permutation(std::move(q)));
}

/// All valid dominoes with p points, built directly from the cell
/// conditions (no use of the bijection). Ordered by column tags, then
/// bottom word, then top word.
inline std::vector<GriddedDomino> enumerate_dominoes(int p) {
    if (p < 0) throw std::invalid_argument("negative point count");
    std::vector<std::vector<Permutation>> av132(p + 1), av213(p + 1);
    for (int s = 0; s <= p; ++s) {
        av132[s] = generate_avoiders(s, patterns::p132);
        av213[s] = generate_avoiders(s, patterns::p213);
    }
    std::vector<GriddedDomino> out;
    // Bit (p-1-c) set means column c is in the top cell, so increasing masks
    // give tag strings in lexicographic order ('b' < 't').
    for (unsigned long mask = 0; mask < (1ul << p); ++mask) {
        GriddedDomino d;
        int nb = 0;
        for (int c = 0; c < p; ++c) {
            const bool is_top = (mask >> (p - 1 - c)) & 1u;
            d.cols.push_back(is_top ? Cell::top : Cell::bottom);
            nb += !is_top;
        }
        for (const auto& lo : av132[nb])
            for (const auto& hi : av213[p - nb]) {
                d.bottom = lo;
                d.top = hi;
                if (avoids_1324(d.underlying())) out.push_back(d);
            }
    }
    return out;
}

/// "B:<bottom>|T:<top>|cols:<tags>", e.g. "B:1|T:1|cols:bt".
inline std::string to_string(const GriddedDomino& d) {
    std::string tags;
    for (Cell c : d.cols) tags += static_cast<char>(c);
    return "B:" + to_string(d.bottom) + "|T:" + to_string(d.top) + "|cols:" + tags;
}

inline GriddedDomino parse_domino(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("bad domino text: " + std::string(text)); };
    const auto bar1 = text.find('|');
    const auto bar2 = bar1 == std::string_view::npos ? bar1 : text.find('|', bar1 + 1);
    if (bar2 == std::string_view::npos) throw fail();
    auto b = text.substr(0, bar1);
    auto t = text.substr(bar1 + 1, bar2 - bar1 - 1);
    auto c = text.substr(bar2 + 1);
    if (!b.starts_with("B:") || !t.starts_with("T:") || !c.starts_with("cols:")) throw fail();
    GriddedDomino d;
    d.bottom = parse_permutation(b.substr(2));
    d.top = parse_permutation(t.substr(2));
    for (char ch : c.substr(5)) {
        if (ch == 'b')
            d.cols.push_back(Cell::bottom);
        else if (ch == 't')
            d.cols.push_back(Cell::top);
        else
            throw fail();
    }
    return d;
}

} // namespace av1324
