#pragma once
// io.hpp - CSV/JSON/SVG/dot emission for the CLI. CSV is the canonical
// machine-readable format: fixed column order, '\n' line endings, no locale
// formatting.

#include "collatz/collatz.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

namespace collatz::io {

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// Family table as CSV: one row per signed index, k = 1..kmax on both sides.
inline void step_table_csv(unsigned kmax, std::ostream& out) {
    out << "index,coef_num,coef_den,const_num,const_den,"
           "in1,in2,in3,in4,out1,out2,out3,out4\n";
    for (unsigned k = 1; k <= kmax; ++k) {
        for (int index : {int(k), -int(k)}) {
            StepMap s = step_map(index);
            Int coef_num = 3 * s.map.sign;
            Int den = pow2_int(k);
            out << (index > 0 ? "f" : "f-") << k << ',' << coef_num << ',' << den
                << ',' << s.map.cnum << ',' << den;
            std::ostringstream ins, outs;
            for (unsigned i = 0; i < 4; ++i) {
                Int x = s.domain.member(i);
                ins << ',' << x;
                outs << ',' << step_apply(index, x);
            }
            out << ins.str() << outs.str() << '\n';
        }
    }
}

inline void jacobsthal_csv(unsigned kmax, std::ostream& out) {
    out << "k,c_k,d_k,prime_divides_c\n";
    for (unsigned k = 1; k <= kmax; ++k) {
        out << k << ',' << jacobsthal_c(k) << ',' << jacobsthal_d(k) << ','
            << (prime_divides_c(k) ? 1 : 0) << '\n';
    }
}

inline void sequence_csv(const std::string& name, const Int& max, bool levels,
                         std::ostream& out) {
    out << "index,value\n";
    for (Int n = 1; n <= max; ++n) {
        Int v;
        if (name == "a016789") v = a016789(n);
        else if (name == "a075677") v = a075677(n);
        else v = a329480(n);
        out << n << ',' << v << '\n';
    }
    if (levels) {
        out << "level,first,last\n";
        for (unsigned k = 1; Level::of(k).first <= max; ++k) {
            Level lv = Level::of(k);
            out << lv.k << ',' << lv.first << ',' << lv.last << '\n';
        }
    }
}

inline void sequence_json(const std::string& name, const Int& max, std::ostream& out) {
    out << '[';
    for (Int n = 1; n <= max; ++n) {
        Int v;
        if (name == "a016789") v = a016789(n);
        else if (name == "a075677") v = a075677(n);
        else v = a329480(n);
        if (n > 1) out << ',';
        out << v;
    }
    out << "]\n";
}

inline void polar_csv(const Int& n_max, std::ostream& out) {
    out << "n,theta,r,label\n";
    for (const auto& row : export_polar(n_max)) {
        out << row.n << ',' << fmt_double(row.theta) << ',' << fmt_double(row.r)
            << ',' << row.label << '\n';
    }
}

inline void polar_json(const Int& n_max, std::ostream& out) {
    out << "[";
    bool first = true;
    for (const auto& row : export_polar(n_max)) {
        if (!first) out << ',';
        first = false;
        out << "{\"n\":" << row.n << ",\"theta\":" << fmt_double(row.theta)
            << ",\"r\":" << fmt_double(row.r) << ",\"label\":" << row.label << '}';
    }
    out << "]\n";
}

// Presentation-only: spiral polyline sampled at a fixed angular step with
// labeled rays.
inline void polar_svg(const Int& n_max, std::ostream& out) {
    auto rows = export_polar(n_max);
    double rmax = rows.empty() ? 2.0 : rows.back().r;
    double scale = 220.0 / rmax;
    double cx = 250.0, cy = 250.0;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" "
           "viewBox=\"0 0 500 500\">\n";
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.5\" points=\"";
    double theta_max = rows.empty() ? 0.0 : rows.back().theta;
    const double step = std::numbers::pi / 64.0;
    for (double th = 0.0; th <= theta_max; th += step) {
        double r = spiral_radius(th) * scale;
        out << cx + r * std::cos(th) << ',' << cy - r * std::sin(th) << ' ';
    }
    out << "\"/>\n";
    for (const auto& row : rows) {
        double r0 = row.r * scale;
        double x0 = cx + r0 * std::cos(row.theta), y0 = cy - r0 * std::sin(row.theta);
        double x1 = cx + 240.0 * std::cos(row.theta), y1 = cy - 240.0 * std::sin(row.theta);
        out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1
            << "\" y2=\"" << y1 << "\" stroke=\"gray\" stroke-width=\"0.3\"/>\n";
        out << "<text x=\"" << x0 << "\" y=\"" << y0 << "\" font-size=\"6\">"
            << row.label << "</text>\n";
    }
    out << "</svg>\n";
}

inline void iterates_csv(unsigned x_max, unsigned i_max, std::ostream& out) {
    out << "x,start";
    for (unsigned i = 1; i <= i_max; ++i) out << ",T" << i;
    out << '\n';
    auto table = iterates_table<Int>(x_max, i_max);
    for (unsigned x = 1; x <= x_max; ++x) {
        out << x;
        for (const Int& v : table[x - 1]) out << ',' << v;
        out << '\n';
    }
}

inline void lines_csv(unsigned kmax, std::ostream& out) {
    out << "index,slope_num,slope_den,intercept_num,intercept_den\n";
    for (unsigned k = 1; k <= kmax; ++k) {
        for (int index : {int(k), -int(k)}) {
            StepMap s = step_map(index);
            out << (index > 0 ? "f" : "f-") << k << ',' << 3 * s.map.sign << ','
                << pow2_int(k) << ',' << s.map.cnum << ',' << pow2_int(k) << '\n';
        }
    }
}

inline void tree_csv(const TreeSlice& t, std::ostream& out) {
    out << "child,parent\n";
    for (const auto& e : t.edges) out << e.child << ',' << e.parent << '\n';
}

inline void tree_dot(const TreeSlice& t, std::ostream& out) {
    out << "digraph spiral_tree {\n  rankdir=BT;\n";
    for (const auto& e : t.edges)
        out << "  \"" << e.child << "\" -> \"" << e.parent << "\";\n";
    out << "}\n";
}

inline void tree_json(const TreeSlice& t, std::ostream& out) {
    out << "{\"radius\":" << t.radius << ",\"all_reach_zero\":"
        << (t.all_reach_zero ? "true" : "false") << ",\"edges\":[";
    bool first = true;
    for (const auto& e : t.edges) {
        if (!first) out << ',';
        first = false;
        out << '[' << e.child << ',' << e.parent << ']';
    }
    out << "]}\n";
}

inline std::string indices_str(const std::vector<int>& indices) {
    std::string s;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) s += ",";
        s += "f" + std::to_string(indices[i]);
    }
    return s;
}

inline void chain_report(const CompositionChain& c, std::ostream& out) {
    out << "chain: " << indices_str(c.indices) << '\n';
    out << "composite: " << c.composite.str() << '\n';
    Category cat = categorize(c.composite);
    out << "category: " << int(cat) << '\n';
    out << "sink: " << (is_sink(c.composite) ? "yes" : "no") << '\n';
    if (!c.realizable) {
        out << "domain: empty (unrealizable)\n";
        return;
    }
    out << "domain: " << c.domain.str() << '\n';
    out << "smallest domain element: " << c.domain.anchor() << " -> "
        << c.composite.eval_integer(c.domain.anchor()) << '\n';
    FixedPoint fp = fixed_point(c.composite, &c.domain);
    if (fp.is_identity) out << "fixed point: identity map\n";
    else if (fp.no_fixed_point) out << "fixed point: none (coefficient 1)\n";
    else {
        out << "fixed point: " << numerator(fp.x_star);
        if (denominator(fp.x_star) != 1) out << '/' << denominator(fp.x_star);
        out << (fp.is_integer ? (fp.in_domain ? " (integer, in domain)" : " (integer, not in domain)")
                              : " (not an integer)")
            << '\n';
    }
}

}  // namespace collatz::io
