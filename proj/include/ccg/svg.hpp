#ifndef CCG_SVG_HPP_
#define CCG_SVG_HPP_

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace ccg::svg
{
    struct Series
    {
        std::string name;
        std::vector<double> x;
        std::vector<double> y;
        std::string color = "#1f77b4";
    };

    /// Line chart; non-finite samples are skipped.
    std::string line_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                          const std::string& ylabel);

    struct Shape
    {
        std::vector<Eigen::Vector2d> points;
        std::string stroke = "#1f77b4";
        std::string fill = "none";
        bool closed = true;
        double width = 1.0;
    };

    struct Circle
    {
        Eigen::Vector2d center;
        double radius = 0.0;
        std::string stroke = "#999999";
    };

    struct Marker
    {
        Eigen::Vector2d at;
        std::string color = "#d62728";
    };

    /// Equal-aspect scene of polygons, polylines, circles and point markers.
    std::string scene(const std::vector<Shape>& shapes, const std::vector<Circle>& circles,
                      const std::vector<Marker>& markers, const std::string& title);
}

#endif
