namespace lf {}
