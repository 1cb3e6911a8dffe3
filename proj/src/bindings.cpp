#include "gamow/types.hpp"
