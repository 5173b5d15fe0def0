namespace chainforge {}
