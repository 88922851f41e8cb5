#include "farey_nielsen/commands.hpp"

int main(int argc, char** argv) { return farey_nielsen::run_cli(argc, argv); }
