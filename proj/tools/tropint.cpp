#include "tropint_app.hpp"

int main(int argc, char** argv) { return tropint::run(argc, argv); }
