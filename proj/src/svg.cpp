#include "ccg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ccg::svg
{
    namespace
    {
        constexpr double kWidth = 720.0;
        constexpr double kHeight = 480.0;
        constexpr double kMargin = 60.0;

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", v);
            return buf;
        }

        std::string escape(const std::string& s)
        {
            std::string out;
            for (char ch : s)
            {
                switch (ch)
                {
                case '<':
                    out += "&lt;";
                    break;
                case '>':
                    out += "&gt;";
                    break;
                case '&':
                    out += "&amp;";
                    break;
                default:
                    out += ch;
                }
            }
            return out;
        }

        struct Box
        {
            double x0 = std::numeric_limits<double>::infinity();
            double x1 = -std::numeric_limits<double>::infinity();
            double y0 = std::numeric_limits<double>::infinity();
            double y1 = -std::numeric_limits<double>::infinity();

            void add(double x, double y)
            {
                if (!std::isfinite(x) || !std::isfinite(y))
                    return;
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }

            void pad()
            {
                if (!std::isfinite(x0))
                    x0 = 0, x1 = 1, y0 = 0, y1 = 1;
                if (x1 - x0 < 1e-12)
                    x0 -= 0.5, x1 += 0.5;
                if (y1 - y0 < 1e-12)
                    y0 -= 0.5, y1 += 0.5;
            }
        };

        std::string header(const std::string& title)
        {
            std::ostringstream os;
            os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
               << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
               << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
               << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               << "font-size=\"16\">" << escape(title) << "</text>\n";
            return os.str();
        }
    }

    std::string line_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                          const std::string& ylabel)
    {
        Box box;
        for (const auto& s : series)
            for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
                box.add(s.x[i], s.y[i]);
        box.pad();
        box.y0 = std::min(box.y0, 0.0);

        const double pw = kWidth - 2 * kMargin;
        const double ph = kHeight - 2 * kMargin;
        const auto X = [&](double x) { return kMargin + (x - box.x0) / (box.x1 - box.x0) * pw; };
        const auto Y = [&](double y) { return kHeight - kMargin - (y - box.y0) / (box.y1 - box.y0) * ph; };

        std::ostringstream os;
        os << header(title);
        os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
        os << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kHeight - kMargin) << "\" x2=\"" << num(kWidth - kMargin)
           << "\" y2=\"" << num(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kMargin) << "\" x2=\"" << num(kMargin) << "\" y2=\""
           << num(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
        for (int t = 0; t <= 4; ++t)
        {
            const double xv = box.x0 + (box.x1 - box.x0) * t / 4.0;
            const double yv = box.y0 + (box.y1 - box.y0) * t / 4.0;
            os << "<text x=\"" << num(X(xv)) << "\" y=\"" << num(kHeight - kMargin + 16)
               << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
            os << "<text x=\"" << num(kMargin - 6) << "\" y=\"" << num(Y(yv) + 4) << "\" text-anchor=\"end\">"
               << num(yv) << "</text>\n";
        }
        os << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 16) << "\" text-anchor=\"middle\">"
           << escape(xlabel) << "</text>\n";
        os << "<text x=\"16\" y=\"" << num(kHeight / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
           << num(kHeight / 2) << ")\">" << escape(ylabel) << "</text>\n";

        int legend = 0;
        for (const auto& s : series)
        {
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
                if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
                    os << num(X(s.x[i])) << ',' << num(Y(s.y[i])) << ' ';
            os << "\"/>\n";
            const double ly = kMargin + 16.0 * legend++;
            os << "<line x1=\"" << num(kWidth - kMargin - 120) << "\" y1=\"" << num(ly) << "\" x2=\""
               << num(kWidth - kMargin - 100) << "\" y2=\"" << num(ly) << "\" stroke=\"" << s.color
               << "\" stroke-width=\"2\"/>\n";
            os << "<text x=\"" << num(kWidth - kMargin - 95) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.name)
               << "</text>\n";
        }
        os << "</g>\n</svg>\n";
        return os.str();
    }

    std::string scene(const std::vector<Shape>& shapes, const std::vector<Circle>& circles,
                      const std::vector<Marker>& markers, const std::string& title)
    {
        Box box;
        for (const auto& s : shapes)
            for (const auto& p : s.points)
                box.add(p.x(), p.y());
        for (const auto& c : circles)
        {
            box.add(c.center.x() - c.radius, c.center.y() - c.radius);
            box.add(c.center.x() + c.radius, c.center.y() + c.radius);
        }
        for (const auto& m : markers)
            box.add(m.at.x(), m.at.y());
        box.pad();

        const double scale =
            std::min((kWidth - 2 * kMargin) / (box.x1 - box.x0), (kHeight - 2 * kMargin) / (box.y1 - box.y0));
        const auto X = [&](double x) { return kMargin + (x - box.x0) * scale; };
        const auto Y = [&](double y) { return kHeight - kMargin - (y - box.y0) * scale; };

        std::ostringstream os;
        os << header(title);
        for (const auto& c : circles)
            os << "<circle cx=\"" << num(X(c.center.x())) << "\" cy=\"" << num(Y(c.center.y())) << "\" r=\""
               << num(c.radius * scale) << "\" fill=\"none\" stroke=\"" << c.stroke
               << "\" stroke-dasharray=\"4 3\"/>\n";
        for (const auto& s : shapes)
        {
            os << '<' << (s.closed ? "polygon" : "polyline") << " fill=\"" << s.fill << "\" stroke=\"" << s.stroke
               << "\" stroke-width=\"" << num(s.width) << "\" points=\"";
            for (const auto& p : s.points)
                os << num(X(p.x())) << ',' << num(Y(p.y())) << ' ';
            os << "\"/>\n";
        }
        for (const auto& m : markers)
            os << "<circle cx=\"" << num(X(m.at.x())) << "\" cy=\"" << num(Y(m.at.y())) << "\" r=\"2.5\" fill=\""
               << m.color << "\"/>\n";
        os << "</svg>\n";
        return os.str();
    }
}
