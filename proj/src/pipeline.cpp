#include "qisurf/constants.hpp"
