// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/cli.h>

#include <iostream>

int main(int argc, char** argv)
{
    return nakasim::RunCli(argc, argv, std::cout, std::cerr);
}
