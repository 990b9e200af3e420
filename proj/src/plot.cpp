#include "hardchoice/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hardchoice/ensemble.hpp"
#include "hardchoice/errors.hpp"

namespace hardchoice {

namespace {

constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 360.0;
constexpr double kMargin = 48.0;
constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Box {
    double x0, x1, y0, y1;

    bool contains(double x, double y) const {
        const double tx = 1e-9 * (x1 - x0);
        const double ty = 1e-9 * (y1 - y0);
        return x >= x0 - tx && x <= x1 + tx && y >= y0 - ty && y <= y1 + ty;
    }
};

// Option bounding box padded by 10% of its span (1 when the span is 0).
Box axis_box(const ChoiceProblem& problem) {
    double x0 = problem.options.front().scores[0], x1 = x0;
    double y0 = problem.options.front().scores[1], y1 = y0;
    for (const auto& o : problem.options) {
        x0 = std::min(x0, o.scores[0]);
        x1 = std::max(x1, o.scores[0]);
        y0 = std::min(y0, o.scores[1]);
        y1 = std::max(y1, o.scores[1]);
    }
    const double px = x1 > x0 ? 0.1 * (x1 - x0) : 1.0;
    const double py = y1 > y0 ? 0.1 * (y1 - y0) : 1.0;
    return {x0 - px, x1 + px, y0 - py, y1 + py};
}

class Panel {
public:
    Panel(const Box& box, double offset_x) : box_(box), offset_x_(offset_x) {}

    double px(double x) const { return offset_x_ + kMargin + (x - box_.x0) / (box_.x1 - box_.x0) * kPanelWidth; }
    double py(double y) const { return kMargin + (box_.y1 - y) / (box_.y1 - box_.y0) * kPanelHeight; }

    // Level set {x : value(juror, x) = level} clipped to the box, as path data.
    std::string level_path(const Juror& juror, double level) const {
        const double w1 = juror.weights()[0];
        const double w2 = juror.weights()[1];
        std::vector<std::pair<double, double>> pts;
        if (juror.form() == UtilityForm::Linear) {
            if (w2 > 0.0) {
                for (double x : {box_.x0, box_.x1}) pts.emplace_back(x, (level - w1 * x) / w2);
            }
            if (w1 > 0.0) {
                for (double y : {box_.y0, box_.y1}) pts.emplace_back((level - w2 * y) / w1, y);
            }
            std::erase_if(pts, [&](const auto& p) { return !box_.contains(p.first, p.second); });
            std::sort(pts.begin(), pts.end());
            if (pts.size() < 2) return {};
            return "M" + num(px(pts.front().first)) + " " + num(py(pts.front().second)) + " L" +
                   num(px(pts.back().first)) + " " + num(py(pts.back().second));
        }

        if (w2 == 0.0) {
            const double x = std::pow(level, 1.0 / w1);
            if (!box_.contains(x, box_.y0)) return {};
            return "M" + num(px(x)) + " " + num(py(box_.y0)) + " L" + num(px(x)) + " " + num(py(box_.y1));
        }
        std::string path;
        bool pen_down = false;
        constexpr int kSamples = 96;
        for (int i = 0; i <= kSamples; ++i) {
            const double x = box_.x0 + (box_.x1 - box_.x0) * i / kSamples;
            const double y = x > 0.0 ? std::pow(level / std::pow(x, w1), 1.0 / w2) : NAN;
            if (!std::isfinite(y) || !box_.contains(x, y)) {
                pen_down = false;
                continue;
            }
            path += (pen_down ? " L" : (path.empty() ? "M" : " M")) + num(px(x)) + " " + num(py(y));
            pen_down = true;
        }
        return path;
    }

    void draw(std::ostringstream& out, const std::string& title, const ChoiceProblem& problem,
              const std::vector<std::string>& axis_names, const Jury& jury, const OptionPoint& a,
              const OptionPoint& b) const {
        out << "<g>\n";
        out << "<rect x=\"" << num(offset_x_ + kMargin) << "\" y=\"" << num(kMargin) << "\" width=\""
            << num(kPanelWidth) << "\" height=\"" << num(kPanelHeight)
            << "\" fill=\"none\" stroke=\"#333333\"/>\n";
        out << "<text x=\"" << num(offset_x_ + kMargin + kPanelWidth / 2) << "\" y=\"" << num(kMargin - 18)
            << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(title) << "</text>\n";
        out << "<text x=\"" << num(offset_x_ + kMargin + kPanelWidth / 2) << "\" y=\""
            << num(kMargin + kPanelHeight + 36) << "\" text-anchor=\"middle\" font-size=\"12\">"
            << escape(axis_names[0]) << "</text>\n";
        out << "<text x=\"" << num(offset_x_ + 14) << "\" y=\"" << num(kMargin + kPanelHeight / 2)
            << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " << num(offset_x_ + 14) << " "
            << num(kMargin + kPanelHeight / 2) << ")\">" << escape(axis_names[1]) << "</text>\n";
        for (auto [value, x, y, anchor] :
             {std::tuple{box_.x0, px(box_.x0), kMargin + kPanelHeight + 16, "start"},
              std::tuple{box_.x1, px(box_.x1), kMargin + kPanelHeight + 16, "end"}}) {
            out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
                << "\" font-size=\"10\">" << num(value) << "</text>\n";
        }
        for (auto [value, y] : {std::pair{box_.y0, py(box_.y0)}, std::pair{box_.y1, py(box_.y1) + 10}}) {
            out << "<text x=\"" << num(offset_x_ + kMargin - 4) << "\" y=\"" << num(y)
                << "\" text-anchor=\"end\" font-size=\"10\">" << num(value) << "</text>\n";
        }

        for (std::size_t j = 0; j < jury.size(); ++j) {
            const Juror& juror = jury[j];
            const char* colour = kPalette[j % kPalette.size()];
            const double ua = juror_value(juror, a);
            const double ub = juror_value(juror, b);
            out << "<g stroke=\"" << colour << "\" fill=\"none\" stroke-width=\"1.5\">\n";
            for (double level : {ua, ub, 0.5 * (ua + ub)}) {
                const auto d = level_path(juror, level);
                if (!d.empty()) out << "<path d=\"" << d << "\"/>\n";
            }
            out << "</g>\n";
            out << "<text x=\"" << num(offset_x_ + kMargin + kPanelWidth - 6) << "\" y=\""
                << num(kMargin + 16 + 14 * static_cast<double>(j)) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
                << colour << "\">" << escape(juror.id()) << " (" << num(juror.weights()[0]) << ", "
                << num(juror.weights()[1]) << ")</text>\n";
        }

        std::vector<const OptionPoint*> ordered;
        for (const auto& o : problem.options) ordered.push_back(&o);
        std::sort(ordered.begin(), ordered.end(), [](auto* x, auto* y) { return x->name < y->name; });
        for (const auto* o : ordered) {
            const double x = px(o->scores[0]);
            const double y = py(o->scores[1]);
            out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3.5\" fill=\"#000000\"/>\n";
            out << "<text x=\"" << num(x + 6) << "\" y=\"" << num(y - 6) << "\" font-size=\"12\">" << escape(o->name)
                << "</text>\n";
        }
        out << "</g>\n";
    }

private:
    Box box_;
    double offset_x_;
};

}  // namespace

std::string render_plot_svg(const Scenario& scenario, const OptionPair& pair, const std::optional<Jury>& resolved) {
    const auto& problem = scenario.problem;
    if (problem.dimension() != 2) {
        throw Error(ErrorKind::UnsupportedDimension,
                    "plots need exactly 2 objectives, got " + std::to_string(problem.dimension()));
    }
    if (resolved && resolved->dimension() != 2) {
        throw Error(ErrorKind::UnsupportedDimension, "resolved jury is not two-dimensional");
    }
    const OptionPoint& a = problem.option(pair.first);
    const OptionPoint& b = problem.option(pair.second);
    const Box box = axis_box(problem);
    const std::vector<std::string> axes{problem.objectives[0].name, problem.objectives[1].name};

    const int panels = resolved ? 2 : 1;
    const double width = panels * (kPanelWidth + 2 * kMargin);
    const double height = kPanelHeight + 2 * kMargin;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    Panel(box, 0.0).draw(out, "jury: " + a.name + " vs " + b.name, problem, axes, scenario.jury, a, b);
    if (resolved) {
        Panel(box, kPanelWidth + 2 * kMargin)
            .draw(out, "resolved jury: " + a.name + " vs " + b.name, problem, axes, *resolved, a, b);
    }
    out << "</svg>\n";
    return out.str();
}

void emit_plot(const Scenario& scenario, const OptionPair& pair, const std::string& path,
               const std::optional<Jury>& resolved) {
    write_text_file(path, render_plot_svg(scenario, pair, resolved));
}

}  // namespace hardchoice
